macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(survival_curve, "survival_curve.rs", survival_curve_runs);
example!(lifetime_dilation, "lifetime_dilation.rs", lifetime_dilation_runs);
example!(narrow_width_expansion, "narrow_width_expansion.rs", narrow_width_expansion_runs);
example!(velocity_eigenstates, "velocity_eigenstates.rs", velocity_eigenstates_runs);
example!(wave_packets, "wave_packets.rs", wave_packets_runs);
example!(hyperplane_overlap, "hyperplane_overlap.rs", hyperplane_overlap_runs);
example!(two_point_residual, "two_point_residual.rs", two_point_residual_runs);
example!(discrete_states, "discrete_states.rs", discrete_states_runs);
example!(minkowski_geometry, "minkowski_geometry.rs", minkowski_geometry_runs);
example!(tabulated_spectrum, "tabulated_spectrum.rs", tabulated_spectrum_runs);
example!(scenario_table, "scenario_table.rs", scenario_table_runs);
