//! The rank-two Heisenberg-Virasoro Lie algebras `L(p1,p2)` and their
//! extension by the degree derivations `D1`, `D2`.
//!
//! `L(p)` has basis `T(m)`, `E(m)` for `m` in `Z^2` and brackets driven by the
//! 2x2 determinant of the `p`-shifted index pairs:
//!
//! ```text
//! [T(m), T(n)] = 0
//! [T(m), E(n)] = -|m+p, n+p| T(m+n)
//! [E(m), E(n)] = -|m+p, n+p| E(m+n)
//! ```
//!
//! where `|u, v| = u1*v2 - u2*v1`. The extended algebra adds the commuting
//! derivations `D1`, `D2` with `[Di, E(m)] = m_i E(m)` and
//! `[Di, T(m)] = (m_i + p_i) T(m)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The structure parameters `(p1, p2)`; arbitrary scalars, including zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraParams {
    pub p1: Scalar,
    pub p2: Scalar,
}

impl AlgebraParams {
    pub fn new(p1: Scalar, p2: Scalar) -> Self {
        AlgebraParams { p1, p2 }
    }

    pub fn zero() -> Self {
        AlgebraParams::new(Scalar::zero(), Scalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.p1.is_zero() && self.p2.is_zero()
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p1, self.p2)
    }
}

/// A `Z^2` grading index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Index {
    pub m1: i64,
    pub m2: i64,
}

impl Index {
    pub const ZERO: Index = Index { m1: 0, m2: 0 };

    pub const fn new(m1: i64, m2: i64) -> Self {
        Index { m1, m2 }
    }

    pub fn is_zero(&self) -> bool {
        *self == Index::ZERO
    }

    /// The index translated by `p`, as a scalar pair.
    pub fn shifted(&self, p: &AlgebraParams) -> (Scalar, Scalar) {
        (
            &Scalar::from_int(self.m1) + &p.p1,
            &Scalar::from_int(self.m2) + &p.p2,
        )
    }
}

impl Add for Index {
    type Output = Index;
    fn add(self, rhs: Index) -> Index {
        Index::new(self.m1 + rhs.m1, self.m2 + rhs.m2)
    }
}

impl Sub for Index {
    type Output = Index;
    fn sub(self, rhs: Index) -> Index {
        Index::new(self.m1 - rhs.m1, self.m2 - rhs.m2)
    }
}

impl Neg for Index {
    type Output = Index;
    fn neg(self) -> Index {
        Index::new(-self.m1, -self.m2)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

/// All indices of the square window `[-radius, radius]^2` in lexicographic
/// order (first coordinate major).
pub fn window_indices(radius: i64) -> Vec<Index> {
    let mut out = Vec::new();
    for m1 in -radius..=radius {
        for m2 in -radius..=radius {
            out.push(Index::new(m1, m2));
        }
    }
    out
}

/// Basis generators of the extended algebra. The derived order (`T` block,
/// then `E` block, then `D1`, `D2`, indices lexicographic) fixes the
/// deterministic sweep order used by every verification suite.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    T(Index),
    E(Index),
    D1,
    D2,
}

/// All generators with indices in `[-radius, radius]^2`, plus `D1`, `D2`,
/// in the canonical sweep order.
pub fn window_generators(radius: i64) -> Vec<Generator> {
    let mut out: Vec<Generator> = window_indices(radius)
        .iter()
        .map(|m| Generator::T(*m))
        .chain(window_indices(radius).iter().map(|m| Generator::E(*m)))
        .collect();
    out.push(Generator::D1);
    out.push(Generator::D2);
    out
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T(m) => write!(f, "T{m}"),
            Generator::E(m) => write!(f, "E{m}"),
            Generator::D1 => write!(f, "D1"),
            Generator::D2 => write!(f, "D2"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// Accepts `T(m1,m2)`, `E(m1,m2)`, `D1`, `D2` (whitespace insignificant).
    fn from_str(s: &str) -> Result<Generator> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid generator literal `{s}`"));
        match compact.as_str() {
            "D1" => return Ok(Generator::D1),
            "D2" => return Ok(Generator::D2),
            _ => {}
        }
        let (kind, rest) = compact.split_at(compact.len().min(1));
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = body.split_once(',').ok_or_else(bad)?;
        let m1: i64 = a.parse().map_err(|_| bad())?;
        let m2: i64 = b.parse().map_err(|_| bad())?;
        match kind {
            "T" => Ok(Generator::T(Index::new(m1, m2))),
            "E" => Ok(Generator::E(Index::new(m1, m2))),
            _ => Err(bad()),
        }
    }
}

/// Which algebra an element lives in: `L(p)` itself, or its extension by the
/// degree derivations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    PlainL,
    ExtendedL,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::PlainL => write!(f, "L"),
            Flavor::ExtendedL => write!(f, "Lt"),
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "L" => Ok(Flavor::PlainL),
            "Lt" => Ok(Flavor::ExtendedL),
            _ => Err(Error::Parse(format!("invalid flavor `{s}` (expected L or Lt)"))),
        }
    }
}

/// A finite linear combination of generators, canonical (no zero terms).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn generator(g: Generator) -> Self {
        LieElement::term(g, Scalar::one())
    }

    pub fn term(g: Generator, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        LieElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Generator) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        if c.is_zero() {
            return LieElement::zero();
        }
        LieElement {
            terms: self.terms.iter().map(|(g, v)| (*g, v * c)).collect(),
        }
    }

    fn insert_add(&mut self, g: Generator, c: Scalar) {
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

    /// `ExtendedL` as soon as a degree derivation appears.
    pub fn flavor(&self) -> Flavor {
        if self.terms.keys().any(|g| matches!(g, Generator::D1 | Generator::D2)) {
            Flavor::ExtendedL
        } else {
            Flavor::PlainL
        }
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.insert_add(*g, c.clone());
        }
        out
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.insert_add(*g, -c);
        }
        out
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        LieElement {
            terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect(),
        }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut rendered = String::new();
        for (pos, (g, c)) in self.terms.iter().enumerate() {
            let (negative, body) = if !c.im().is_zero() && !c.re().is_zero() {
                (false, format!("({c})*{g}"))
            } else {
                let neg = c.re().is_negative() || c.im().is_negative();
                let mag = if neg { -c } else { c.clone() };
                let lit = if mag.is_one() {
                    g.to_string()
                } else {
                    format!("{mag}*{g}")
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

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement({self})")
    }
}

/// `|u, v| = u1*v2 - u2*v1`.
pub fn det2(u: &(Scalar, Scalar), v: &(Scalar, Scalar)) -> Scalar {
    &(&u.0 * &v.1) - &(&u.1 * &v.0)
}

/// Bracket of two basis generators of the extended algebra.
pub fn bracket_generators(x: &Generator, y: &Generator, p: &AlgebraParams) -> LieElement {
    use Generator::*;
    match (x, y) {
        (T(_), T(_)) | (D1, D1) | (D2, D2) | (D1, D2) | (D2, D1) => LieElement::zero(),
        (T(m), E(n)) => LieElement::term(
            T(*m + *n),
            -&det2(&m.shifted(p), &n.shifted(p)),
        ),
        (E(m), T(n)) => LieElement::term(
            T(*m + *n),
            det2(&n.shifted(p), &m.shifted(p)),
        ),
        (E(m), E(n)) => LieElement::term(
            E(*m + *n),
            -&det2(&m.shifted(p), &n.shifted(p)),
        ),
        (D1, T(m)) => LieElement::term(T(*m), &Scalar::from_int(m.m1) + &p.p1),
        (D2, T(m)) => LieElement::term(T(*m), &Scalar::from_int(m.m2) + &p.p2),
        (D1, E(m)) => LieElement::term(E(*m), Scalar::from_int(m.m1)),
        (D2, E(m)) => LieElement::term(E(*m), Scalar::from_int(m.m2)),
        (T(_), D1) | (T(_), D2) | (E(_), D1) | (E(_), D2) => {
            -&bracket_generators(y, x, p)
        }
    }
}

/// Bilinear extension of the generator bracket.
pub fn bracket(x: &LieElement, y: &LieElement, p: &AlgebraParams) -> LieElement {
    let mut out = LieElement::zero();
    for (gx, cx) in &x.terms {
        for (gy, cy) in &y.terms {
            out = &out + &bracket_generators(gx, gy, p).scale(&(cx * cy));
        }
    }
    out
}

/// The outer derivation `D`: kills every `E(m)`, fixes every `T(m)`.
///
/// Its domain is the span of the graded generators only; elements carrying
/// `D1` or `D2` are rejected.
pub fn outer_derivation(x: &LieElement) -> Result<LieElement> {
    let mut out = LieElement::zero();
    for (g, c) in &x.terms {
        match g {
            Generator::T(_) => out.insert_add(*g, c.clone()),
            Generator::E(_) => {}
            Generator::D1 | Generator::D2 => {
                return Err(Error::Unsupported(
                    "outer derivation is defined on the span of T(m), E(m) only".into(),
                ))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p1: i64, p2: i64) -> AlgebraParams {
        AlgebraParams::new(Scalar::from_int(p1), Scalar::from_int(p2))
    }

    fn e(m1: i64, m2: i64) -> Generator {
        Generator::E(Index::new(m1, m2))
    }

    fn t(m1: i64, m2: i64) -> Generator {
        Generator::T(Index::new(m1, m2))
    }

    #[test]
    fn t_generators_commute() {
        let p = params(1, 2);
        assert!(bracket_generators(&t(3, -1), &t(0, 4), &p).is_zero());
    }

    #[test]
    fn ee_bracket_matches_determinant() {
        // |(1,0)+(1,0), (0,1)+(1,0)| = |(2,0),(1,1)| = 2, so the bracket is -2 E(1,1).
        let p = params(1, 0);
        assert_eq!(
            bracket_generators(&e(1, 0), &e(0, 1), &p),
            LieElement::term(e(1, 1), Scalar::from_int(-2))
        );
    }

    #[test]
    fn te_bracket_lands_in_t() {
        // Gaussian structure parameters: p = (i, 0) gives |(1+i,0),(i,1)| = 1+i.
        let p = AlgebraParams::new(Scalar::i(), Scalar::zero());
        assert_eq!(
            bracket_generators(&t(1, 0), &e(0, 1), &p),
            LieElement::term(t(1, 1), -&"1+1i".parse::<Scalar>().unwrap())
        );
    }

    #[test]
    fn degree_derivations_weigh_generators() {
        let p = params(1, 0);
        assert_eq!(
            bracket_generators(&Generator::D1, &e(3, -2), &p),
            LieElement::term(e(3, -2), Scalar::from_int(3))
        );
        assert_eq!(
            bracket_generators(&Generator::D1, &t(2, 5), &p),
            LieElement::term(t(2, 5), Scalar::from_int(3))
        );
        assert_eq!(
            bracket_generators(&Generator::D2, &t(2, 5), &p),
            LieElement::term(t(2, 5), Scalar::from_int(5))
        );
        assert!(bracket_generators(&Generator::D1, &Generator::D2, &p).is_zero());
    }

    #[test]
    fn zero_coefficient_brackets_collapse() {
        // p = (0,0) and parallel shifted indices give determinant 0.
        let p = AlgebraParams::zero();
        assert!(bracket_generators(&e(1, 1), &e(2, 2), &p).is_zero());
    }

    fn sweep(radius: i64) -> Vec<Generator> {
        window_generators(radius)
    }

    #[test]
    fn antisymmetry_on_a_window() {
        let p = params(1, 2);
        for x in sweep(1) {
            for y in sweep(1) {
                let xy = bracket_generators(&x, &y, &p);
                let yx = bracket_generators(&y, &x, &p);
                assert!((&xy + &yx).is_zero(), "[{x},{y}] + [{y},{x}] != 0");
            }
        }
    }

    #[test]
    fn jacobi_on_a_window() {
        let p = AlgebraParams::new(Scalar::rational(1, 2), Scalar::from_int(-1));
        let gens = sweep(1);
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    let xe = LieElement::generator(*x);
                    let ye = LieElement::generator(*y);
                    let ze = LieElement::generator(*z);
                    let s = &(&bracket(&bracket(&xe, &ye, &p), &ze, &p)
                        + &bracket(&bracket(&ye, &ze, &p), &xe, &p))
                        + &bracket(&bracket(&ze, &xe, &p), &ye, &p);
                    assert!(s.is_zero(), "jacobi fails at ({x},{y},{z})");
                }
            }
        }
    }

    #[test]
    fn outer_derivation_fixes_t_and_kills_e() {
        let x = &LieElement::term(t(1, 2), Scalar::from_int(3))
            + &LieElement::term(e(0, 1), Scalar::from_int(5));
        assert_eq!(
            outer_derivation(&x).unwrap(),
            LieElement::term(t(1, 2), Scalar::from_int(3))
        );
    }

    #[test]
    fn outer_derivation_rejects_degree_derivations() {
        let x = LieElement::generator(Generator::D1);
        assert!(matches!(outer_derivation(&x), Err(Error::Unsupported(_))));
    }

    #[test]
    fn outer_derivation_is_a_derivation_on_the_graded_part() {
        let p = params(1, 0);
        for x in window_indices(1) {
            for y in window_indices(1) {
                for (gx, gy) in [
                    (t(x.m1, x.m2), t(y.m1, y.m2)),
                    (t(x.m1, x.m2), e(y.m1, y.m2)),
                    (e(x.m1, x.m2), e(y.m1, y.m2)),
                ] {
                    let xe = LieElement::generator(gx);
                    let ye = LieElement::generator(gy);
                    let lhs = outer_derivation(&bracket(&xe, &ye, &p)).unwrap();
                    let rhs = &bracket(&outer_derivation(&xe).unwrap(), &ye, &p)
                        + &bracket(&xe, &outer_derivation(&ye).unwrap(), &p);
                    assert_eq!(lhs, rhs, "derivation law fails at ({gx},{gy})");
                }
            }
        }
    }

    #[test]
    fn flavor_tagging() {
        assert_eq!(LieElement::generator(t(0, 0)).flavor(), Flavor::PlainL);
        assert_eq!(LieElement::generator(Generator::D2).flavor(), Flavor::ExtendedL);
    }

    #[test]
    fn generator_literals_round_trip() {
        for text in ["T(1,-2)", "E(0,0)", "D1", "D2"] {
            let g: Generator = text.parse().unwrap();
            assert_eq!(g.to_string(), text);
        }
        assert!("T(1)".parse::<Generator>().is_err());
        assert!("F(1,2)".parse::<Generator>().is_err());
        assert!("T(1/2,0)".parse::<Generator>().is_err());
    }

    #[test]
    fn element_rendering_is_deterministic() {
        let x = &(&LieElement::term(t(1, 2), Scalar::from_int(2))
            - &LieElement::generator(Generator::D1))
            + &LieElement::term(e(0, 1), "1+1i".parse().unwrap());
        assert_eq!(x.to_string(), "2*T(1,2) + (1+1i)*E(0,1) - D1");
        assert_eq!(LieElement::zero().to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn generators() -> impl Strategy<Value = Generator> {
            prop_oneof![
                ((-2i64..=2), (-2i64..=2)).prop_map(|(a, b)| Generator::T(Index::new(a, b))),
                ((-2i64..=2), (-2i64..=2)).prop_map(|(a, b)| Generator::E(Index::new(a, b))),
                Just(Generator::D1),
                Just(Generator::D2),
            ]
        }

        fn elements() -> impl Strategy<Value = LieElement> {
            proptest::collection::vec((generators(), -5i64..=5), 0..4).prop_map(|terms| {
                let mut x = LieElement::zero();
                for (g, c) in terms {
                    x = &x + &LieElement::term(g, Scalar::from_int(c));
                }
                x
            })
        }

        proptest! {
            #[test]
            fn bracket_is_bilinear(x in elements(), y in elements(), z in elements(), a in -4i64..=4) {
                let p = AlgebraParams::new(Scalar::from_int(1), Scalar::rational(-1, 2));
                let ax = x.scale(&Scalar::from_int(a));
                prop_assert_eq!(
                    bracket(&(&ax + &y), &z, &p),
                    &bracket(&x, &z, &p).scale(&Scalar::from_int(a)) + &bracket(&y, &z, &p)
                );
                prop_assert_eq!(
                    bracket(&z, &(&ax + &y), &p),
                    &bracket(&z, &x, &p).scale(&Scalar::from_int(a)) + &bracket(&z, &y, &p)
                );
            }

            #[test]
            fn bracket_is_antisymmetric(x in elements(), y in elements()) {
                let p = AlgebraParams::new(Scalar::rational(2, 3), Scalar::zero());
                prop_assert_eq!(bracket(&x, &y, &p), -&bracket(&y, &x, &p));
            }
        }
    }
}
