//! Sparse bivariate polynomials over the Gaussian rationals.
//!
//! Elements of `Q(i)[d1, d2]` are stored as exponent-pair -> coefficient maps
//! with no explicit zero terms, so structural equality is polynomial equality.
//! `d1`, `d2` are the two commuting variables (the Cartan generators act as
//! multiplication by them in the polynomial modules).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent pair `(e1, e2)` for the monomial `d1^e1 * d2^e2`.
pub type Exponents = (u32, u32);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exponents, Scalar>,
}

/// All exponent pairs of total degree <= `deg`, in graded-lex order
/// (degree ascending, `d1`-power descending within a degree).
pub fn monomials_up_to(deg: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in 0..=deg {
        for e2 in 0..=d {
            out.push((d - e2, e2));
        }
    }
    out
}

/// Graded-lex comparison key with `d1 > d2`: degree first, then `e1`.
fn grlex_key(e: &Exponents) -> (u32, u32) {
    (e.0 + e.1, e.0)
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::monomial(0, 0, c)
    }

    /// The variable `d1`.
    pub fn d1() -> Self {
        Poly::monomial(1, 0, Scalar::one())
    }

    /// The variable `d2`.
    pub fn d2() -> Self {
        Poly::monomial(0, 1, Scalar::one())
    }

    pub fn monomial(e1: u32, e2: u32, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// Coefficient of `d1^e1 * d2^e2` (zero when the term is absent).
    pub fn coeff(&self, e1: u32, e2: u32) -> Scalar {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// The substitution `f(d1 - s1, d2 - s2)`.
    pub fn shift(&self, s1: &Scalar, s2: &Scalar) -> Poly {
        let max1 = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
        let max2 = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        let x1 = &Poly::d1() - &Poly::constant(s1.clone());
        let x2 = &Poly::d2() - &Poly::constant(s2.clone());
        let pow1 = power_table(&x1, max1);
        let pow2 = power_table(&x2, max2);
        let mut out = Poly::zero();
        for ((e1, e2), c) in &self.terms {
            let prod = &pow1[*e1 as usize] * &pow2[*e2 as usize];
            out = &out + &prod.scale(c);
        }
        out
    }

    /// Integer-shift convenience for module index shifts.
    pub fn shift_int(&self, s1: i64, s2: i64) -> Poly {
        self.shift(&Scalar::from_int(s1), &Scalar::from_int(s2))
    }

    /// Exact evaluation at `(a1, a2)`.
    pub fn eval(&self, a1: &Scalar, a2: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for ((e1, e2), c) in &self.terms {
            let m = &a1.pow(*e1 as i64).expect("nonnegative power")
                * &a2.pow(*e2 as i64).expect("nonnegative power");
            acc = &acc + &(c * &m);
        }
        acc
    }
}

fn power_table(base: &Poly, up_to: u32) -> Vec<Poly> {
    let mut table = Vec::with_capacity(up_to as usize + 1);
    table.push(Poly::one());
    for k in 1..=up_to as usize {
        let next = &table[k - 1] * base;
        table.push(next);
    }
    table
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_add(*k, v.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_add(*k, -v);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((a1, a2), c) in &self.terms {
            for ((b1, b2), d) in &rhs.terms {
                out.insert_add((a1 + b1, a2 + b2), c * d);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

macro_rules! forward_owned_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_poly_binop!(Add, add);
forward_owned_poly_binop!(Sub, sub);
forward_owned_poly_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn render_monomial(e1: u32, e2: u32) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("d1", e1), ("d2", e2)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Deterministic rendering in descending graded-lex term order;
    /// `parse(render(f)) == f` for every polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by_key(|e| std::cmp::Reverse(grlex_key(e)));
        let mut rendered = String::new();
        for (pos, key) in keys.iter().enumerate() {
            let c = &self.terms[*key];
            let mono = render_monomial(key.0, key.1);
            // Pull a minus sign out of coefficients that have a single
            // nonzero part; mixed coefficients keep their sign inside parens.
            let (negative, body) = if !c.im().is_zero() && !c.re().is_zero() {
                (false, format!("({c})"))
            } else {
                let neg = c.re().is_negative() || c.im().is_negative();
                let mag = if neg { -c } else { c.clone() };
                let lit = mag.to_string();
                (neg, lit)
            };
            let body = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
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

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Splits `s` at top-level occurrences of any char in `seps` (a sign at
/// position 0 binds to the first piece; parentheses protect their interior).
fn split_top_level(s: &str, seps: &[char]) -> Vec<String> {
    let mut pieces = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for (idx, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth == 0 && idx > 0 && seps.contains(&ch) {
            pieces.push(std::mem::take(&mut current));
            current.push(ch);
        } else {
            current.push(ch);
        }
    }
    pieces.push(current);
    pieces
}

fn parse_factor(s: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("invalid polynomial factor `{s}`"));
    if let Some(inner) = s.strip_prefix('(') {
        let inner = inner.strip_suffix(')').ok_or_else(bad)?;
        return Ok(Poly::constant(inner.parse()?));
    }
    if let Some(rest) = s.strip_prefix("d1").or_else(|| s.strip_prefix("d2")) {
        let var = if s.starts_with("d1") { Poly::d1() } else { Poly::d2() };
        if rest.is_empty() {
            return Ok(var);
        }
        let digits = rest.strip_prefix('^').ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let e: u32 = digits.parse().map_err(|_| bad())?;
        let (e1, e2) = if s.starts_with("d1") { (e, 0) } else { (0, e) };
        return Ok(Poly::monomial(e1, e2, Scalar::one()));
    }
    Ok(Poly::constant(s.parse()?))
}

impl FromStr for Poly {
    type Err = Error;

    /// Grammar (whitespace insignificant): terms joined by `+`/`-`, each term
    /// a `*`-product of factors; a factor is `d1`/`d2` with an optional
    /// `^exponent`, a scalar literal, or a parenthesized scalar literal.
    fn from_str(s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial literal".into()));
        }
        let mut out = Poly::zero();
        for piece in split_top_level(&compact, &['+', '-']) {
            let (negate, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            let mut term = Poly::one();
            for factor in body.split('*') {
                term = &term * &parse_factor(factor)?;
            }
            out = if negate { &out - &term } else { &out + &term };
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Poly {
        text.parse().unwrap()
    }

    #[test]
    fn binomial_square() {
        let sum = &Poly::d1() + &Poly::d2();
        assert_eq!(&sum * &sum, p("d1^2 + 2*d1*d2 + d2^2"));
    }

    #[test]
    fn shift_expands_binomially() {
        assert_eq!(Poly::d1().shift_int(1, 0), p("d1 - 1"));
        assert_eq!(p("d1^2").shift_int(1, 0), p("d1^2 - 2*d1 + 1"));
    }

    #[test]
    fn shift_with_rational_offsets() {
        let shifted = p("d1*d2").shift(&Scalar::rational(1, 2), &Scalar::from_int(-1));
        assert_eq!(shifted, p("d1*d2 + d1 - 1/2*d2 - 1/2"));
    }

    #[test]
    fn eval_is_exact() {
        let f = p("d1^2 + d2");
        let v = f.eval(&"1i".parse().unwrap(), &Scalar::rational(1, 2));
        assert_eq!(v, Scalar::rational(-1, 2));
    }

    #[test]
    fn zero_terms_are_never_stored() {
        let f = &p("d1 + d2") - &p("d1");
        assert_eq!(f, Poly::d2());
        assert!((&p("d1") - &p("d1")).is_zero());
        assert_eq!(p("d1 - d1").to_string(), "0");
    }

    #[test]
    fn degree_and_coeff_lookup() {
        let f = p("2/3*d1^2*d2 - d2 + 1");
        assert_eq!(f.degree(), Some(3));
        assert_eq!(f.coeff(2, 1), Scalar::rational(2, 3));
        assert_eq!(f.coeff(0, 1), Scalar::from_int(-1));
        assert_eq!(f.coeff(5, 5), Scalar::zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn rendering_uses_graded_lex_order() {
        assert_eq!(p("1 + d2 + d1 + d2^2 + d1*d2").to_string(), "d1*d2 + d2^2 + d1 + d2 + 1");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-d1 + 1").to_string(), "-d1 + 1");
        assert_eq!(
            p("(1+2i)*d1 - 1/2i*d2 - 3").to_string(),
            "(1+2i)*d1 - 1/2i*d2 - 3"
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "d3", "d1^", "d1^-2", "1 +", "(d1)", "d1*", "2**d1"] {
            assert!(text.parse::<Poly>().is_err(), "accepted `{text}`");
        }
    }

    #[test]
    fn monomial_enumeration_is_graded_lex() {
        assert_eq!(
            monomials_up_to(2),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        );
        assert_eq!(monomials_up_to(3).len(), 10);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalars() -> impl Strategy<Value = Scalar> {
            (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
                &(&Scalar::rational(a, b) + &(&Scalar::rational(c, d) * &Scalar::i()))
                    * &Scalar::one()
            })
        }

        fn polys() -> impl Strategy<Value = Poly> {
            proptest::collection::vec(((0u32..3, 0u32..3), scalars()), 0..5).prop_map(|terms| {
                let mut f = Poly::zero();
                for ((e1, e2), c) in terms {
                    f = &f + &Poly::monomial(e1, e2, c);
                }
                f
            })
        }

        proptest! {
            #[test]
            fn ring_laws(f in polys(), g in polys(), h in polys()) {
                prop_assert_eq!(&f + &g, &g + &f);
                prop_assert_eq!(&f * &g, &g * &f);
                prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
                prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
                prop_assert_eq!(&f - &f, Poly::zero());
            }

            #[test]
            fn shift_is_a_ring_homomorphism(f in polys(), g in polys(), s in scalars(), t in scalars()) {
                prop_assert_eq!((&f + &g).shift(&s, &t), &f.shift(&s, &t) + &g.shift(&s, &t));
                prop_assert_eq!((&f * &g).shift(&s, &t), &f.shift(&s, &t) * &g.shift(&s, &t));
            }

            #[test]
            fn shifts_compose_additively(f in polys(), s in scalars(), t in scalars(), u in scalars(), v in scalars()) {
                prop_assert_eq!(
                    f.shift(&s, &t).shift(&u, &v),
                    f.shift(&(&s + &u), &(&t + &v))
                );
                prop_assert_eq!(f.shift(&Scalar::zero(), &Scalar::zero()), f);
            }

            #[test]
            fn eval_commutes_with_shift(f in polys(), s in scalars(), t in scalars(), a in scalars(), b in scalars()) {
                prop_assert_eq!(
                    f.shift(&s, &t).eval(&a, &b),
                    f.eval(&(&a - &s), &(&b - &t))
                );
            }

            #[test]
            fn parse_render_round_trip(f in polys()) {
                prop_assert_eq!(f.to_string().parse::<Poly>().unwrap(), f);
            }
        }
    }
}
