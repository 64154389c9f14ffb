mod suites;

#[test]
fn reduction_is_idempotent_and_separates_classes() {
    suites::reduction_is_idempotent_and_separates_classes();
}

#[test]
fn pruned_n_verification_matches_exhaustive_sweep() {
    suites::pruned_n_verification_matches_exhaustive_sweep();
}

#[test]
fn failure_traces_increase_in_lex_order() {
    suites::failure_traces_increase_in_lex_order();
}

#[test]
fn shortcuts_do_not_change_the_quotient() {
    suites::shortcuts_do_not_change_the_quotient();
}
