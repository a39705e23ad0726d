mod common;

#[test]
fn cyclotomic_field_axioms() {
    common::run("cyclotomic_field_axioms").unwrap();
}

#[test]
fn reynolds_projection_is_idempotent() {
    common::run("reynolds_projection_is_idempotent").unwrap();
}

#[test]
fn substitution_is_a_ring_homomorphism() {
    common::run("substitution_is_a_ring_homomorphism").unwrap();
}

#[test]
fn group_action_is_multiplicative() {
    common::run("group_action_is_multiplicative").unwrap();
}

#[test]
fn reduction_mod_p_is_a_homomorphism() {
    common::run("reduction_mod_p_is_a_homomorphism").unwrap();
}

#[test]
fn seeded_draws_are_reproducible() {
    common::run("seeded_draws_are_reproducible").unwrap();
}
