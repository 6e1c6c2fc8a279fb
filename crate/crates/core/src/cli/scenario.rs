//! Scenario files: one `key = value` pair per line, dotted keys, `#`
//! comments, comma lists or `start:stop:count` ranges for grids.

use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::spectral::{SpectralDensity, DEFAULT_WINDOW};

/// ħ in MeV·s.
pub const HBAR_MEV_S: f64 = 6.582_119_569e-22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Units {
    Natural,
    /// Masses and widths in MeV, times in seconds.
    Physical,
}

impl Units {
    pub fn as_str(&self) -> &'static str {
        match self {
            Units::Natural => "natural",
            Units::Physical => "physical",
        }
    }

    /// A time read from the scenario, in units of inverse mass.
    pub fn time_in(&self, t: f64) -> f64 {
        match self {
            Units::Natural => t,
            Units::Physical => t / HBAR_MEV_S,
        }
    }

    /// A time in units of inverse mass, as written to the output.
    pub fn time_out(&self, t: f64) -> f64 {
        match self {
            Units::Natural => t,
            Units::Physical => t * HBAR_MEV_S,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    entries: BTreeMap<String, String>,
    sha256: String,
    dir: PathBuf,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::invalid(format!("cannot read scenario {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Error::invalid("scenario file is not valid UTF-8"))?;
        let mut sc = Self::parse(&text)?;
        sc.sha256 = hex(&Sha256::digest(&bytes));
        sc.dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(sc)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::invalid(format!("line {}: expected `key = value`", i + 1)));
            };
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_') {
                return Err(Error::invalid(format!("line {}: bad key `{k}`", i + 1)));
            }
            if entries.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::invalid(format!("line {}: duplicate key `{k}`", i + 1)));
            }
        }
        Ok(Scenario { entries, sha256: hex(&Sha256::digest(text.as_bytes())), dir: PathBuf::new() })
    }

    pub fn sha256(&self) -> &str {
        &self.sha256
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for k in self.entries.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::invalid(format!("unknown scenario key `{k}`")));
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn number(&self, key: &str) -> Result<Option<f64>> {
        self.get(key)
            .map(|v| parse_number(key, v))
            .transpose()
    }

    pub fn require(&self, key: &str) -> Result<f64> {
        self.number(key)?.ok_or_else(|| Error::invalid(format!("missing `{key}`")))
    }

    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(key).map(|v| parse_grid(key, v)).transpose()
    }

    pub fn require_list(&self, key: &str) -> Result<Vec<f64>> {
        self.list(key)?.ok_or_else(|| Error::invalid(format!("missing `{key}`")))
    }

    pub fn flag(&self, key: &str, default: bool) -> Result<bool> {
        match self.get(key) {
            None => Ok(default),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(v) => Err(Error::invalid(format!("`{key}`: expected true or false, got `{v}`"))),
        }
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig> {
        let mut cfg = QuadratureConfig::default();
        if let Some(v) = self.number("quadrature.rtol")? {
            cfg.rtol = v;
        }
        if let Some(v) = self.number("quadrature.lifetime_rtol")? {
            cfg.lifetime_rtol = v;
        }
        if let Some(v) = self.number("quadrature.factor")? {
            cfg.factor = v;
        }
        if let Some(v) = self.number("quadrature.max_panels")? {
            if !(v >= 1.0 && v.fract() == 0.0) {
                return Err(Error::invalid("`quadrature.max_panels` must be a positive integer"));
            }
            cfg.max_panels = v as usize;
        }
        cfg.validate().map_err(|e| Error::invalid(format!("quadrature settings: {e}")))?;
        Ok(cfg)
    }

    pub fn spectral(&self) -> Result<SpectralDensity> {
        let model = self.get("spectral.model").ok_or_else(|| Error::invalid("missing `spectral.model`"))?;
        let field = |e: Error| Error::invalid(format!("spectral: {e}"));
        match model {
            "bw-full" => SpectralDensity::breit_wigner(self.require("spectral.mu0")?, self.require("spectral.gamma")?)
                .map_err(field),
            "bw-truncated" => {
                let (mu0, gamma) = (self.require("spectral.mu0")?, self.require("spectral.gamma")?);
                let window = self.number("spectral.window")?.unwrap_or(DEFAULT_WINDOW);
                let lo = match self.number("spectral.lo")? {
                    Some(v) => v,
                    None => (mu0 - window * gamma).max(0.0),
                };
                let hi = self.number("spectral.hi")?.unwrap_or(mu0 + window * gamma);
                SpectralDensity::breit_wigner_truncated(mu0, gamma, lo, hi).map_err(field)
            }
            "tabulated" => {
                let file = self.get("spectral.file").ok_or_else(|| Error::invalid("missing `spectral.file`"))?;
                let path = self.dir.join(file);
                SpectralDensity::load_tabulated(&path)?.normalize().map_err(field)
            }
            "point-mass" => SpectralDensity::point_mass(self.require("spectral.mu0")?).map_err(field),
            other => Err(Error::invalid(format!(
                "`spectral.model`: unknown model `{other}` (bw-full, bw-truncated, tabulated, point-mass)"
            ))),
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_number(key: &str, v: &str) -> Result<f64> {
    let x: f64 = v.parse().map_err(|_| Error::invalid(format!("`{key}`: not a number: `{v}`")))?;
    if !x.is_finite() {
        return Err(Error::invalid(format!("`{key}`: must be finite")));
    }
    Ok(x)
}

/// `a, b, c` or `start:stop:count` (inclusive, evenly spaced).
fn parse_grid(key: &str, v: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = v.split(':').map(str::trim).collect();
    match parts.as_slice() {
        [single] => single.split(',').map(|x| parse_number(key, x.trim())).collect(),
        [a, b, n] => {
            let (a, b) = (parse_number(key, a)?, parse_number(key, b)?);
            let n: usize = n
                .parse()
                .map_err(|_| Error::invalid(format!("`{key}`: range count must be a positive integer")))?;
            match n {
                0 => Err(Error::invalid(format!("`{key}`: range count must be positive"))),
                1 => Ok(vec![a]),
                _ => Ok((0..n)
                    .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
                    .collect()),
            }
        }
        _ => Err(Error::invalid(format!("`{key}`: expected a comma list or start:stop:count"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_lists_and_ranges() {
        let sc = Scenario::parse(
            "# comment\nspectral.model = bw-full\nspectral.mu0 = 100 # trailing\n\ngrid.tau = 0:1:5\ngrid.s = 0, 1e4\n",
        )
        .unwrap();
        assert_eq!(sc.get("spectral.model"), Some("bw-full"));
        assert_eq!(sc.require("spectral.mu0").unwrap(), 100.0);
        assert_eq!(sc.require_list("grid.tau").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(sc.require_list("grid.s").unwrap(), vec![0.0, 1e4]);
        assert!(sc.check_keys(&["spectral.model", "spectral.mu0", "grid.tau", "grid.s"]).is_ok());
        assert!(sc.check_keys(&["spectral.model"]).is_err());
        assert_eq!(sc.sha256().len(), 64);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Scenario::parse("novalue\n").is_err());
        assert!(Scenario::parse("a = 1\na = 2\n").is_err());
        assert!(Scenario::parse("bad key = 1\n").is_err());
        let sc = Scenario::parse("x = abc\ng = 1:2\nn = 0:1:0\nb = maybe\n").unwrap();
        assert!(sc.number("x").is_err());
        assert!(sc.list("g").is_err());
        assert!(sc.list("n").is_err());
        assert!(sc.flag("b", true).is_err());
        assert!(sc.require("missing").is_err());
    }

    #[test]
    fn builds_spectral_models() {
        let sc = Scenario::parse("spectral.model = bw-truncated\nspectral.mu0 = 100\nspectral.gamma = 1\n").unwrap();
        let s = sc.spectral().unwrap();
        assert_eq!(s.support(), (50.0, 150.0));
        let sc = Scenario::parse("spectral.model = bw-full\nspectral.mu0 = 100\nspectral.gamma = -1\n").unwrap();
        assert!(matches!(sc.spectral(), Err(Error::Invalid(_))));
        let sc = Scenario::parse("spectral.model = lorentz\n").unwrap();
        assert!(sc.spectral().is_err());
    }

    #[test]
    fn physical_units_round_trip() {
        let u = Units::Physical;
        assert!((u.time_out(u.time_in(3e-23)) - 3e-23).abs() < 1e-38);
        assert!((u.time_in(HBAR_MEV_S) - 1.0).abs() < 1e-15);
    }
}
