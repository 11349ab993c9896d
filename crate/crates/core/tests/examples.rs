macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run().expect(concat!($file, " should run"));
        }
    };
}

example!(block_construction, "block_construction.rs");
example!(verify_witness, "verify_witness.rs");
example!(exact_search, "exact_search.rs");
example!(bounds_report, "bounds_report.rs");
example!(recovering_entropy, "recovering_entropy.rs");
example!(power_construction, "power_construction.rs");
