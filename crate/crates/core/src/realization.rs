//! Differential-operator realization of the extended algebra, used as an
//! independent oracle for the structure constants.
//!
//! On the span of abstract symbols `u(g)` indexed by weights `g` in
//! `Q(i)^2`, the generators act by
//!
//! ```text
//! D1 u(g) = g1 u(g)                 D2 u(g) = g2 u(g)
//! E(m) u(g) = [(m2+p2) g1 - (m1+p1) g2] u(g+m)
//! T(m) u(g) = u(g+m+p)
//! ```
//!
//! These rules come from operators of the form `x^(m+p) (multiplication)` and
//! `x^m ((m2+p2) x1 d/dx1 - (m1+p1) x2 d/dx2)` acting on symbols
//! `u(g) = x1^g1 x2^g2`, so the commutator of the actions is an honest
//! operator commutator. Checking `action([x,y]) = action(x) action(y) -
//! action(y) action(x)` therefore certifies the bracket's structure
//! constants along a route that never invokes the bracket's own determinant
//! formula.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::lie::{bracket, AlgebraParams, Generator, LieElement};
use crate::scalar::Scalar;

/// A weight: the exponent pair of a realization basis symbol.
pub type Weight = (Scalar, Scalar);

/// A finite linear combination of basis symbols `u(g)`, canonical
/// (no zero terms).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RealizationElement {
    terms: BTreeMap<Weight, Scalar>,
}

impl RealizationElement {
    pub fn zero() -> Self {
        RealizationElement::default()
    }

    /// The basis symbol `u(g)`.
    pub fn basis(g: Weight) -> Self {
        RealizationElement::term(g, Scalar::one())
    }

    pub fn term(g: Weight, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        RealizationElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Weight) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> RealizationElement {
        if c.is_zero() {
            return RealizationElement::zero();
        }
        RealizationElement {
            terms: self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect(),
        }
    }

    fn insert_add(&mut self, g: Weight, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

impl Add for &RealizationElement {
    type Output = RealizationElement;
    fn add(self, rhs: &RealizationElement) -> RealizationElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.insert_add(g.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RealizationElement {
    type Output = RealizationElement;
    fn sub(self, rhs: &RealizationElement) -> RealizationElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.insert_add(g.clone(), -c);
        }
        out
    }
}

impl Neg for &RealizationElement {
    type Output = RealizationElement;
    fn neg(self) -> RealizationElement {
        RealizationElement {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for RealizationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut rendered = String::new();
        for (pos, ((g1, g2), c)) in self.terms.iter().enumerate() {
            let sym = format!("u({g1},{g2})");
            let (negative, body) = if !c.im().is_zero() && !c.re().is_zero() {
                (false, format!("({c})*{sym}"))
            } else {
                let neg = c.re().is_negative() || c.im().is_negative();
                let mag = if neg { -c } else { c.clone() };
                let lit = if mag.is_one() {
                    sym
                } else {
                    format!("{mag}*{sym}")
                };
                (neg, lit)
            };
            if pos == 0 {
                if negative {
                    rendered.push('-');
                }
            } else {
                rendered.push_str(if negative { " - " } else { " + " });
            }
            rendered.push_str(&body);
        }
        f.write_str(&rendered)
    }
}

impl fmt::Debug for RealizationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealizationElement({self})")
    }
}

/// Action of a single generator on a single basis symbol.
fn apply_to_basis(
    x: &Generator,
    g: &Weight,
    p: &AlgebraParams,
) -> RealizationElement {
    let (g1, g2) = g;
    match x {
        Generator::D1 => RealizationElement::term(g.clone(), g1.clone()),
        Generator::D2 => RealizationElement::term(g.clone(), g2.clone()),
        Generator::E(m) => {
            let (s1, s2) = m.shifted(p);
            let coeff = &(&s2 * g1) - &(&s1 * g2);
            let target = (g1 + &Scalar::from_int(m.m1), g2 + &Scalar::from_int(m.m2));
            RealizationElement::term(target, coeff)
        }
        Generator::T(m) => {
            let (s1, s2) = m.shifted(p);
            RealizationElement::basis((g1 + &s1, g2 + &s2))
        }
    }
}

/// Linear extension of the realization action.
pub fn realize_apply(
    x: &LieElement,
    w: &RealizationElement,
    p: &AlgebraParams,
) -> RealizationElement {
    let mut out = RealizationElement::zero();
    for (gen, cx) in x.terms() {
        for (g, cw) in &w.terms {
            out = &out + &apply_to_basis(gen, g, p).scale(&(cx * cw));
        }
    }
    out
}

/// Residual of the oracle cross-check at a single weight:
///
/// ```text
/// action([x,y]) u(g) - (action(x) action(y) - action(y) action(x)) u(g)
/// ```
///
/// Identically zero exactly when the bracket's structure constants agree
/// with the operator commutators.
pub fn cross_check_bracket(
    x: &Generator,
    y: &Generator,
    g: &Weight,
    p: &AlgebraParams,
) -> RealizationElement {
    let u = RealizationElement::basis(g.clone());
    let xe = LieElement::generator(*x);
    let ye = LieElement::generator(*y);
    let via_bracket = realize_apply(&bracket(&xe, &ye, p), &u, p);
    let commutator = &realize_apply(&xe, &realize_apply(&ye, &u, p), p)
        - &realize_apply(&ye, &realize_apply(&xe, &u, p), p);
    &via_bracket - &commutator
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{window_generators, Index};

    fn params(p1: i64, p2: i64) -> AlgebraParams {
        AlgebraParams::new(Scalar::from_int(p1), Scalar::from_int(p2))
    }

    fn w(a: i64, b: i64) -> Weight {
        (Scalar::from_int(a), Scalar::from_int(b))
    }

    #[test]
    fn degree_derivations_read_off_the_weight() {
        let p = params(1, 0);
        let x = LieElement::generator(Generator::D1);
        assert_eq!(
            realize_apply(&x, &RealizationElement::basis(w(5, 7)), &p),
            RealizationElement::term(w(5, 7), Scalar::from_int(5))
        );
    }

    #[test]
    fn t_translates_by_index_plus_p() {
        let p = params(2, 3);
        let x = LieElement::generator(Generator::T(Index::new(1, 0)));
        assert_eq!(
            realize_apply(&x, &RealizationElement::basis(w(0, 0)), &p),
            RealizationElement::basis(w(3, 3))
        );
    }

    #[test]
    fn e_scales_and_translates() {
        let p = params(0, 1);
        let x = LieElement::generator(Generator::E(Index::new(0, 0)));
        assert_eq!(
            realize_apply(&x, &RealizationElement::basis(w(1, 0)), &p),
            RealizationElement::basis(w(1, 0))
        );
    }

    #[test]
    fn commutator_of_e_actions_matches_bracket_coefficient() {
        // p = (1,0): [E(1,0), E(0,1)] = -2 E(1,1), and on u(2,3) both routes
        // produce 8 u(3,4).
        let p = params(1, 0);
        let x = Generator::E(Index::new(1, 0));
        let y = Generator::E(Index::new(0, 1));
        let g = w(2, 3);
        let via_bracket = realize_apply(
            &bracket(
                &LieElement::generator(x),
                &LieElement::generator(y),
                &p,
            ),
            &RealizationElement::basis(g.clone()),
            &p,
        );
        assert_eq!(
            via_bracket,
            RealizationElement::term(w(3, 4), Scalar::from_int(8))
        );
        assert!(cross_check_bracket(&x, &y, &g, &p).is_zero());
    }

    #[test]
    fn cross_check_vanishes_on_a_window() {
        let configs = [
            AlgebraParams::zero(),
            params(1, 0),
            AlgebraParams::new(Scalar::rational(1, 2), Scalar::rational(-1, 3)),
            AlgebraParams::new(Scalar::i(), Scalar::one()),
        ];
        let weights = [
            w(0, 0),
            w(1, 0),
            w(2, 3),
            (Scalar::rational(1, 2), Scalar::rational(-1, 3)),
            (Scalar::i(), &Scalar::one() - &Scalar::i()),
        ];
        for p in &configs {
            for x in window_generators(1) {
                for y in window_generators(1) {
                    for g in &weights {
                        assert!(
                            cross_check_bracket(&x, &y, g, p).is_zero(),
                            "residual nonzero at p={p}, x={x}, y={y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn action_is_linear_in_both_slots() {
        let p = params(1, 2);
        let x = &LieElement::term(Generator::E(Index::new(1, 1)), Scalar::from_int(2))
            + &LieElement::generator(Generator::D2);
        let v = &RealizationElement::basis(w(1, 0)).scale(&Scalar::i())
            - &RealizationElement::basis(w(0, 1));
        let direct = realize_apply(&x, &v, &p);
        let split = &realize_apply(&x, &RealizationElement::basis(w(1, 0)), &p)
            .scale(&Scalar::i())
            - &realize_apply(&x, &RealizationElement::basis(w(0, 1)), &p);
        assert_eq!(direct, split);
    }

    #[test]
    fn rendering_is_deterministic() {
        let v = &RealizationElement::term(w(1, 0), Scalar::from_int(-3))
            + &RealizationElement::basis((Scalar::rational(1, 2), Scalar::i()));
        assert_eq!(v.to_string(), "u(1/2,1i) - 3*u(1,0)");
    }
}
