//! Every example under `examples/` runs to completion.

mod class_group {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/class_group.rs"));
}

#[test]
fn class_group_example_runs() {
    class_group::run_example().expect("class group example should run");
}

mod construct_rational {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/construct_rational.rs"));
}

#[test]
fn construct_rational_example_runs() {
    construct_rational::run_example().expect("construct rational example should run");
}

mod imaginary_quadratic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/imaginary_quadratic.rs"));
}

#[test]
fn imaginary_quadratic_example_runs() {
    imaginary_quadratic::run_example().expect("imaginary quadratic example should run");
}

mod composite_n {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/composite_n.rs"));
}

#[test]
fn composite_n_example_runs() {
    composite_n::run_example().expect("composite n example should run");
}

mod frobenius_vs_residue {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/frobenius_vs_residue.rs"));
}

#[test]
fn frobenius_vs_residue_example_runs() {
    frobenius_vs_residue::run_example().expect("frobenius vs residue example should run");
}

mod brauer_split {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/brauer_split.rs"));
}

#[test]
fn brauer_split_example_runs() {
    brauer_split::run_example().expect("brauer split example should run");
}

mod verify_certificate {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_certificate.rs"));
}

#[test]
fn verify_certificate_example_runs() {
    verify_certificate::run_example().expect("verify certificate example should run");
}
