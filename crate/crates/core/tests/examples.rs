macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(expressions, "expressions.rs");
example!(means, "means.rs");
example!(sorting_networks, "sorting_networks.rs");
example!(quantile_circuits, "quantile_circuits.rs");
example!(negation, "negation.rs");
example!(classifiers, "classifiers.rs");
example!(evolve, "evolve.rs");
example!(commands, "commands.rs");
