//! Cross-checks the two computation strategies on the three-generator
//! builtin across the whole dimension grid.
//!
//! The filtered pipeline restricts every arity to its finite weight-graded
//! subcomplex; the direct pipeline works on degree-truncated spaces with a
//! sliding cap and never uses the grading.  They are implemented
//! independently, so agreement on every `q` is a strong end-to-end check.
//! (The direct run additionally recomputes the reduced dimensions from the
//! quotient complex internally and fails if they disagree with the long
//! exact sequence values, so a successful run is itself a second check.)
//!
//! This test stops at arity six to stay fast; the acceptance suite of the
//! command-line crate repeats the comparison at full depth.

use confcoh::algebra::LieConformalAlgebra;
use confcoh::coeff::CoeffModule;
use confcoh::engine::{cohomology, EngineOptions, Mode};
use confcoh::rational::rat_int;

#[test]
fn filtered_and_direct_strategies_agree_on_the_full_grid() {
    let algebra = LieConformalAlgebra::builtin("sv").unwrap();
    let module = CoeffModule::trivial(rat_int(0));

    let filtered = cohomology(
        &algebra,
        &module,
        &EngineOptions {
            qmax: 6,
            mode: Mode::Filtered,
            ..EngineOptions::default()
        },
    )
    .unwrap();
    let direct = cohomology(
        &algebra,
        &module,
        &EngineOptions {
            qmax: 6,
            mode: Mode::Oracle,
            ..EngineOptions::default()
        },
    )
    .unwrap();

    let basic_filtered = filtered.dims_basic.as_ref().unwrap();
    let basic_direct = direct.dims_basic.as_ref().unwrap();
    assert_eq!(basic_filtered, basic_direct, "basic dimension grids differ");
    for q in 0..=6usize {
        assert!(basic_direct.contains_key(&q), "missing basic dimension at q={q}");
    }

    let reduced_filtered = filtered.dims_reduced.as_ref().unwrap();
    let reduced_direct = direct.dims_reduced.as_ref().unwrap();
    assert_eq!(
        reduced_filtered, reduced_direct,
        "reduced dimension grids differ"
    );

    let expected_basic = [1usize, 0, 0, 1, 0, 2, 2];
    let expected_reduced = [1usize, 0, 1, 1, 2, 4, 2];
    for q in 0..=6usize {
        assert_eq!(basic_direct[&q], expected_basic[q], "basic at q={q}");
        assert_eq!(reduced_direct[&q], expected_reduced[q], "reduced at q={q}");
    }
}
