// Four-vectors, boosts and hyperplanes.

use hyperdecay::minkowski::{
    boost_from_velocity, boost_to_normal, decompose, mdot, transform_hyperplane, FourVector, Hyperplane,
};

pub fn run_example() -> hyperdecay::Result<()> {
    let l = boost_from_velocity([0.6, 0.0, 0.0])?;
    println!("metric defect {:.1e}, det {:.15}", l.metric_defect(), l.determinant());

    let p = FourVector::new(5.0, 3.0, 0.0, 0.0);
    let q = l.apply(p);
    println!("p^2 = {}, (Lp)^2 = {:.12}", mdot(p, p), mdot(q, q));

    let h = transform_hyperplane(&l, FourVector::new(1.0, 0.0, 0.0, 0.0), &Hyperplane::instantaneous(0.0));
    println!("moved hyperplane: normal {:?}, offset {:.6}", h.normal().0, h.offset());

    let (perp, along) = decompose(q, h.normal());
    println!("q = {along:.6} eta + {:?}", perp.0);

    let back = boost_to_normal(h.normal())?;
    println!("boost_to_normal maps (1, 0, 0, 0) to {:?}", back.apply(FourVector::TIME).0);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
