macro_rules! example {
    ($($name:ident),*) => {$(
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().unwrap();
        }
    )*};
}

example!(
    expressions,
    star_products,
    poisson_calculus,
    lie_bialgebra,
    quantum_group,
    classical_momentum,
    infinitesimal_momentum,
    quantum_action,
    run_scenario
);
