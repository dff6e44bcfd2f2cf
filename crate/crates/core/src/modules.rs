//! The rank-one polynomial modules `Omega` over the extended algebra.
//!
//! The underlying space is always `Q(i)[d1,d2]`, with `D1`, `D2` acting as
//! multiplication by `d1`, `d2`. The graded generators act through shifts of
//! the argument, in one of two shapes depending on the structure parameters:
//!
//! For `p != 0`, with data `(lambda1, lambda2, alpha, b0)`:
//!
//! ```text
//! E(m) f = lambda^m [(m2+p2)(d1 + p1 a) - (m1+p1)(d2 + p2 a)] f(d - m)
//! T(m) f = lambda^m b0 f(d - m - p)
//! ```
//!
//! For `p = 0`, with data `(lambda1, lambda2, beta1, beta2, b0, k)`:
//!
//! ```text
//! E(m) f = lambda^m [m2 (d1 + beta1) - m1 (d2 + beta2)] f(d - m)
//! T(m) f = lambda^m k f(d - m)   (m != 0),    T(0) f = b0 f
//! ```
//!
//! where `lambda^m = lambda1^m1 lambda2^m2` (so both lambdas must be
//! invertible). The polynomials vanishing at a distinguished point form the
//! unique candidate proper submodule; membership, codimension-one structure,
//! and escape witnesses for simplicity are all decided by exact evaluation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::{bracket, window_indices, AlgebraParams, Generator, Index, LieElement};
use crate::poly::Poly;
use crate::scalar::{parse_scalar_pair, Scalar};

/// Defining data of a rank-one polynomial module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModuleSpec {
    NonzeroP {
        p: AlgebraParams,
        lambda1: Scalar,
        lambda2: Scalar,
        alpha: Scalar,
        b0: Scalar,
    },
    ZeroP {
        lambda1: Scalar,
        lambda2: Scalar,
        beta1: Scalar,
        beta2: Scalar,
        b0: Scalar,
        k: Scalar,
    },
}

impl ModuleSpec {
    /// Module over `L(p)` with `p != 0`; requires invertible lambdas.
    pub fn nonzero_p(
        p: AlgebraParams,
        lambda1: Scalar,
        lambda2: Scalar,
        alpha: Scalar,
        b0: Scalar,
    ) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Precondition(
                "this module shape requires (p1,p2) != (0,0)".into(),
            ));
        }
        if lambda1.is_zero() || lambda2.is_zero() {
            return Err(Error::Precondition("lambda1, lambda2 must be nonzero".into()));
        }
        Ok(ModuleSpec::NonzeroP { p, lambda1, lambda2, alpha, b0 })
    }

    /// Module over `L(0,0)`; requires invertible lambdas.
    pub fn zero_p(
        lambda1: Scalar,
        lambda2: Scalar,
        beta1: Scalar,
        beta2: Scalar,
        b0: Scalar,
        k: Scalar,
    ) -> Result<Self> {
        if lambda1.is_zero() || lambda2.is_zero() {
            return Err(Error::Precondition("lambda1, lambda2 must be nonzero".into()));
        }
        Ok(ModuleSpec::ZeroP { lambda1, lambda2, beta1, beta2, b0, k })
    }

    /// Structure parameters of the algebra acted by (zero for the `p = 0`
    /// shape).
    pub fn params(&self) -> AlgebraParams {
        match self {
            ModuleSpec::NonzeroP { p, .. } => p.clone(),
            ModuleSpec::ZeroP { .. } => AlgebraParams::zero(),
        }
    }

    pub fn lambda(&self) -> (&Scalar, &Scalar) {
        match self {
            ModuleSpec::NonzeroP { lambda1, lambda2, .. }
            | ModuleSpec::ZeroP { lambda1, lambda2, .. } => (lambda1, lambda2),
        }
    }

    /// `lambda1^m1 * lambda2^m2` with negative exponents allowed.
    pub fn lambda_pow(&self, m: Index) -> Scalar {
        let (l1, l2) = self.lambda();
        let a = l1.pow(m.m1).expect("lambda1 nonzero by construction");
        let b = l2.pow(m.m2).expect("lambda2 nonzero by construction");
        &a * &b
    }

    /// The point whose vanishing locus is the distinguished submodule.
    pub fn submodule_point(&self) -> (Scalar, Scalar) {
        match self {
            ModuleSpec::NonzeroP { p, alpha, .. } => {
                (-&(&p.p1 * alpha), -&(&p.p2 * alpha))
            }
            ModuleSpec::ZeroP { beta1, beta2, .. } => (-beta1, -beta2),
        }
    }

    /// Action of a single generator.
    pub fn act_generator(&self, x: &Generator, f: &Poly) -> Poly {
        match x {
            Generator::D1 => &Poly::d1() * f,
            Generator::D2 => &Poly::d2() * f,
            Generator::E(m) => match self {
                ModuleSpec::NonzeroP { p, alpha, .. } => {
                    let (s1, s2) = m.shifted(p);
                    let op = &(&Poly::d1() + &Poly::constant(&p.p1 * alpha)).scale(&s2)
                        - &(&Poly::d2() + &Poly::constant(&p.p2 * alpha)).scale(&s1);
                    (&op * &f.shift_int(m.m1, m.m2)).scale(&self.lambda_pow(*m))
                }
                ModuleSpec::ZeroP { beta1, beta2, .. } => {
                    let op = &(&Poly::d1() + &Poly::constant(beta1.clone()))
                        .scale(&Scalar::from_int(m.m2))
                        - &(&Poly::d2() + &Poly::constant(beta2.clone()))
                            .scale(&Scalar::from_int(m.m1));
                    (&op * &f.shift_int(m.m1, m.m2)).scale(&self.lambda_pow(*m))
                }
            },
            Generator::T(m) => match self {
                ModuleSpec::NonzeroP { p, b0, .. } => {
                    let (s1, s2) = m.shifted(p);
                    f.shift(&s1, &s2).scale(&(&self.lambda_pow(*m) * b0))
                }
                ModuleSpec::ZeroP { b0, k, .. } => {
                    if m.is_zero() {
                        f.scale(b0)
                    } else {
                        f.shift_int(m.m1, m.m2).scale(&(&self.lambda_pow(*m) * k))
                    }
                }
            },
        }
    }

    /// Linear extension of the generator action.
    pub fn act(&self, x: &LieElement, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (g, c) in x.terms() {
            out = &out + &self.act_generator(g, f).scale(c);
        }
        out
    }

    /// Residual of the module axiom on a generator pair:
    /// `act([x,y], f) - (act(x, act(y, f)) - act(y, act(x, f)))`.
    pub fn module_axiom_residual(&self, x: &Generator, y: &Generator, f: &Poly) -> Poly {
        let p = self.params();
        let xe = LieElement::generator(*x);
        let ye = LieElement::generator(*y);
        let via_bracket = self.act(&bracket(&xe, &ye, &p), f);
        let commutator = &self.act(&xe, &self.act(&ye, f))
            - &self.act(&ye, &self.act(&xe, f));
        &via_bracket - &commutator
    }

    /// Whether `f` lies in the distinguished submodule (vanishes at the
    /// submodule point).
    pub fn in_distinguished_submodule(&self, f: &Poly) -> bool {
        let (a1, a2) = self.submodule_point();
        f.eval(&a1, &a2).is_zero()
    }

    /// Searches `[-bound, bound]^2` in lexicographic order for the first `m`
    /// such that `act(T(m), f)` escapes the distinguished submodule (the
    /// constructive step of the simplicity argument).
    ///
    /// Preconditions: `f` nonzero and in the submodule, and the `T`-side of
    /// the action is not identically degenerate (`b0 != 0` resp. `k != 0`).
    pub fn simplicity_witness(&self, f: &Poly, bound: i64) -> Result<Option<Index>> {
        if f.is_zero() {
            return Err(Error::Precondition("witness search requires f != 0".into()));
        }
        if !self.in_distinguished_submodule(f) {
            return Err(Error::Precondition(
                "witness search requires f in the distinguished submodule".into(),
            ));
        }
        let degenerate = match self {
            ModuleSpec::NonzeroP { b0, .. } => b0.is_zero(),
            ModuleSpec::ZeroP { k, .. } => k.is_zero(),
        };
        if degenerate {
            return Err(Error::Precondition(
                "witness search requires a nondegenerate T-action (b0 resp. k nonzero)".into(),
            ));
        }
        let skip_zero = matches!(self, ModuleSpec::ZeroP { .. });
        for m in window_indices(bound) {
            if skip_zero && m.is_zero() {
                continue;
            }
            let image = self.act_generator(&Generator::T(m), f);
            if !self.in_distinguished_submodule(&image) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Residuals of the factor-through-constants identities
    ///
    /// ```text
    /// act(E(m), f) - f(d - m)     * act(E(m), 1)
    /// act(T(m), f) - f(d - m - p) * act(T(m), 1)
    /// ```
    ///
    /// both identically zero for every module of this family.
    pub fn factorization_residuals(&self, m: Index, f: &Poly) -> (Poly, Poly) {
        let p = self.params();
        let one = Poly::one();
        let e_res = &self.act_generator(&Generator::E(m), f)
            - &(&f.shift_int(m.m1, m.m2) * &self.act_generator(&Generator::E(m), &one));
        let (s1, s2) = m.shifted(&p);
        let t_res = &self.act_generator(&Generator::T(m), f)
            - &(&f.shift(&s1, &s2) * &self.act_generator(&Generator::T(m), &one));
        (e_res, t_res)
    }

    /// Canonical flag-set serialization (the CLI input format).
    pub fn to_flag_string(&self) -> String {
        match self {
            ModuleSpec::NonzeroP { p, lambda1, lambda2, alpha, b0 } => format!(
                "--p {},{} --lambda {},{} --alpha {} --b0 {}",
                p.p1, p.p2, lambda1, lambda2, alpha, b0
            ),
            ModuleSpec::ZeroP { lambda1, lambda2, beta1, beta2, b0, k } => format!(
                "--p 0,0 --lambda {},{} --beta {},{} --b0 {} --k {}",
                lambda1, lambda2, beta1, beta2, b0, k
            ),
        }
    }

    /// Parses the flag-set serialization from pre-split tokens.
    pub fn from_flag_tokens(tokens: &[&str]) -> Result<Self> {
        let mut p = None;
        let mut lambda = None;
        let mut alpha = None;
        let mut beta = None;
        let mut b0 = None;
        let mut k = None;
        let mut iter = tokens.iter();
        while let Some(tok) = iter.next() {
            let value = iter
                .next()
                .ok_or_else(|| Error::Parse(format!("flag `{tok}` is missing its value")))?;
            match *tok {
                "--p" => p = Some(parse_scalar_pair(value)?),
                "--lambda" => lambda = Some(parse_scalar_pair(value)?),
                "--alpha" => alpha = Some(value.parse::<Scalar>()?),
                "--beta" => beta = Some(parse_scalar_pair(value)?),
                "--b0" => b0 = Some(value.parse::<Scalar>()?),
                "--k" => k = Some(value.parse::<Scalar>()?),
                other => {
                    return Err(Error::Parse(format!("unknown module flag `{other}`")))
                }
            }
        }
        let missing = |name: &str| Error::Parse(format!("missing required flag `--{name}`"));
        let (p1, p2) = p.ok_or_else(|| missing("p"))?;
        let (l1, l2) = lambda.ok_or_else(|| missing("lambda"))?;
        let b0 = b0.ok_or_else(|| missing("b0"))?;
        let p = AlgebraParams::new(p1, p2);
        if p.is_zero() {
            if alpha.is_some() {
                return Err(Error::Parse("--alpha is not accepted when p = (0,0)".into()));
            }
            let (beta1, beta2) = beta.ok_or_else(|| missing("beta"))?;
            let k = k.ok_or_else(|| missing("k"))?;
            ModuleSpec::zero_p(l1, l2, beta1, beta2, b0, k)
        } else {
            if beta.is_some() || k.is_some() {
                return Err(Error::Parse(
                    "--beta/--k are not accepted when p != (0,0)".into(),
                ));
            }
            let alpha = alpha.ok_or_else(|| missing("alpha"))?;
            ModuleSpec::nonzero_p(p, l1, l2, alpha, b0)
        }
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty module record".into()));
        }
        ModuleSpec::from_flag_tokens(&tokens)
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_flag_string())
    }
}
