//! Every example runs to completion.

macro_rules! example {
    ($module:ident, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($module),
                ".rs"
            ));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!(stringify!($module), " example should run"));
        }
    };
}

example!(catalog_isomorphism, catalog_isomorphism_runs);
example!(ising_polynomial, ising_polynomial_runs);
example!(rooted_composition, rooted_composition_runs);
example!(dense_thermal, dense_thermal_runs);
example!(stochastic_thermal, stochastic_thermal_runs);
example!(discriminate, discriminate_runs);
example!(mimic, mimic_runs);
example!(chimera_embedding, chimera_embedding_runs);
example!(schedule, schedule_runs);
example!(command_line, command_line_runs);
