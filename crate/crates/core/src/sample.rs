//! Seeded random samples for property checks.

use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{degree_window_basis, q, Element, GenTable};
use crate::simplicial::{BigradedElement, SimplicialGda};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coefficient(rng: &mut SampleRng) -> i64 {
    let c = rng.random_range(1..=3);
    if rng.random_bool(0.5) {
        -c
    } else {
        c
    }
}

/// A random element of exactly `degree` with at most `max_terms` terms and
/// small integer coefficients. Zero when the degree window is empty.
pub fn homogeneous(table: &Arc<GenTable>, degree: u32, max_terms: usize, rng: &mut SampleRng) -> Element {
    let basis = degree_window_basis(table, degree).expect("sampling needs positive generator degrees");
    let mut out = Element::zero(table);
    if basis.is_empty() {
        return out;
    }
    let terms = rng.random_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let m = basis[rng.random_range(0..basis.len())].clone();
        out.add_term(m, q(coefficient(rng)));
    }
    out
}

/// A random bigraded element of the given total degree supported in levels
/// `≤ max_level`.
pub fn bigraded(s: &SimplicialGda, total: u32, max_level: usize, max_terms: usize, rng: &mut SampleRng) -> BigradedElement {
    let mut out = BigradedElement::zero();
    let top = max_level.min(total as usize);
    for n in 0..=top {
        if rng.random_bool(0.6) {
            let x = homogeneous(&s.table(n), total - n as u32, max_terms, rng);
            out.add_at(n, &x);
        }
    }
    out
}

/// A random element concentrated at one level.
pub fn single_level(s: &SimplicialGda, level: usize, degree: u32, max_terms: usize, rng: &mut SampleRng) -> BigradedElement {
    BigradedElement::at(level, homogeneous(&s.table(level), degree, max_terms, rng))
}

/// A random combination of `basis` with small integer coefficients.
pub fn combination(table: &Arc<GenTable>, basis: &[Element], rng: &mut SampleRng) -> Element {
    let mut out = Element::zero(table);
    for b in basis {
        if rng.random_bool(0.5) {
            out.add_scaled(b, &q(coefficient(rng)));
        }
    }
    out
}
