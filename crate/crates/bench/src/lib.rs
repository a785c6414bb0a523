//! Fixtures shared by the criterion benches.

use mixcurve::Poly;

/// Brieskorn-Pham polynomial x^a + y^b.
pub fn brieskorn(a: u32, b: u32) -> Poly {
    Poly::parse_infer(&format!("x^{a} + y^{b}")).expect("fixed text parses")
}
