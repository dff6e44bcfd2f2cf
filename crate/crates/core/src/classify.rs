//! Classification machinery for windowed action families.
//!
//! A module structure on `Q(i)[d1,d2]` in which every graded generator acts
//! by "multiply by a polynomial, then shift" is captured by two polynomial
//! families indexed over a window `W` in `Z^2`:
//!
//! ```text
//! E(m) f = g_m(d) f(d - m)        T(m) f = h_m(d) f(d - m - p)
//! ```
//!
//! The module axioms are then equivalent to the consistency system
//!
//! ```text
//! (TT)  h_n(d-m-p) h_m(d) - h_m(d-n-p) h_n(d)                        = 0
//! (TE)  h_n(d-m)   g_m(d) - g_m(d-n-p) h_n(d) - |n+p, m+p| h_{m+n}   = 0
//! (EE)  g_n(d-m)   g_m(d) - g_m(d-n)   g_n(d) - |n+p, m+p| g_{m+n}   = 0
//! ```
//!
//! This module evaluates those residuals exactly over a window, solves the
//! `TE` system for the `h`-side by exact nullspace computation (it is linear
//! in `h` once `g` is fixed), solves the translation-invariance equation
//! `F = F(d - q)` that pins down what scalar multiples are allowed, and
//! recovers defining parameters from a family presented as a black box.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{det2, AlgebraParams, Generator, Index};
use crate::linalg::{maps_to_zero, Rref, SparseRow};
use crate::modules::ModuleSpec;
use crate::poly::{monomials_up_to, Exponents, Poly};
use crate::scalar::Scalar;

/// `X_m = m2 d1 - m1 d2`, the linear form attached to an index.
pub fn x_m(m: Index) -> Poly {
    &Poly::d1().scale(&Scalar::from_int(m.m2)) - &Poly::d2().scale(&Scalar::from_int(m.m1))
}

/// `X_p = p2 d1 - p1 d2`, the same form for the structure parameters.
pub fn x_p(p: &AlgebraParams) -> Poly {
    &Poly::d1().scale(&p.p2) - &Poly::d2().scale(&p.p1)
}

/// `Delta_m = p2 m1 - p1 m2`, the pairing that separates the constant-`h`
/// directions from the rest.
pub fn delta_m(p: &AlgebraParams, m: Index) -> Scalar {
    &(&p.p2 * &Scalar::from_int(m.m1)) - &(&p.p1 * &Scalar::from_int(m.m2))
}

/// A pair of polynomial families `g`, `h` defined exactly on a common
/// window (symmetric, containing 0).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionFamily {
    window: Vec<Index>,
    g: BTreeMap<Index, Poly>,
    h: BTreeMap<Index, Poly>,
}

impl ActionFamily {
    pub fn new(g: BTreeMap<Index, Poly>, h: BTreeMap<Index, Poly>) -> Result<Self> {
        let window: Vec<Index> = g.keys().copied().collect();
        if g.keys().ne(h.keys()) {
            return Err(Error::Window(
                "g and h must be defined on the same window".into(),
            ));
        }
        if !g.contains_key(&Index::ZERO) {
            return Err(Error::Window("the window must contain (0,0)".into()));
        }
        for m in &window {
            if !g.contains_key(&-*m) {
                return Err(Error::Window(format!(
                    "the window must be symmetric; missing {}",
                    -*m
                )));
            }
        }
        Ok(ActionFamily { window, g, h })
    }

    /// Reads the family off a module record: `g_m = act(E(m), 1)`,
    /// `h_m = act(T(m), 1)`.
    pub fn from_spec(spec: &ModuleSpec, window: &[Index]) -> Result<Self> {
        let one = Poly::one();
        let mut g = BTreeMap::new();
        let mut h = BTreeMap::new();
        for m in window {
            g.insert(*m, spec.act_generator(&Generator::E(*m), &one));
            h.insert(*m, spec.act_generator(&Generator::T(*m), &one));
        }
        ActionFamily::new(g, h)
    }

    pub fn window(&self) -> &[Index] {
        &self.window
    }

    /// Panics when `m` is outside the window (the constructor guarantees
    /// both maps cover exactly the window).
    pub fn g(&self, m: Index) -> &Poly {
        &self.g[&m]
    }

    pub fn h(&self, m: Index) -> &Poly {
        &self.h[&m]
    }

    pub fn h_family(&self) -> &BTreeMap<Index, Poly> {
        &self.h
    }

    /// Replaces one `h`-entry (stays on the same window); used to probe how
    /// the residual system reacts to perturbations.
    pub fn set_h(&mut self, m: Index, value: Poly) -> Result<()> {
        if !self.h.contains_key(&m) {
            return Err(Error::Window(format!("{m} is outside the window")));
        }
        self.h.insert(m, value);
        Ok(())
    }
}

/// Which consistency equation a residual belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquationId {
    /// Commutation of two `T`-actions.
    TT,
    /// Mixed `T`/`E` compatibility.
    TE,
    /// The `E`-side bracket relation.
    EE,
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationId::TT => write!(f, "TT"),
            EquationId::TE => write!(f, "TE"),
            EquationId::EE => write!(f, "EE"),
        }
    }
}

fn shift_by_index(f: &Poly, m: Index) -> Poly {
    f.shift_int(m.m1, m.m2)
}

fn shift_by_index_plus_p(f: &Poly, m: Index, p: &AlgebraParams) -> Poly {
    let (s1, s2) = m.shifted(p);
    f.shift(&s1, &s2)
}

fn residual_tt(h_m: &Poly, h_n: &Poly, m: Index, n: Index, p: &AlgebraParams) -> Poly {
    &(&shift_by_index_plus_p(h_n, m, p) * h_m) - &(&shift_by_index_plus_p(h_m, n, p) * h_n)
}

fn residual_te(fam: &ActionFamily, m: Index, n: Index, p: &AlgebraParams) -> Poly {
    let factor = det2(&n.shifted(p), &m.shifted(p));
    let lhs = &(&shift_by_index(fam.h(n), m) * fam.g(m))
        - &(&shift_by_index_plus_p(fam.g(m), n, p) * fam.h(n));
    &lhs - &fam.h(m + n).scale(&factor)
}

fn residual_ee(fam: &ActionFamily, m: Index, n: Index, p: &AlgebraParams) -> Poly {
    let factor = det2(&n.shifted(p), &m.shifted(p));
    let lhs = &(&shift_by_index(fam.g(n), m) * fam.g(m))
        - &(&shift_by_index(fam.g(m), n) * fam.g(n));
    &lhs - &fam.g(m + n).scale(&factor)
}

/// All consistency residuals of a family over its window: `TT` over every
/// index pair, `TE` and `EE` over the pairs whose sum stays in the window.
/// The output order (equation, then both indices lexicographic) is fixed.
pub fn constraint_residuals(
    fam: &ActionFamily,
    p: &AlgebraParams,
) -> Vec<(EquationId, Index, Index, Poly)> {
    let mut out = Vec::new();
    let in_window = |m: Index| fam.window.binary_search(&m).is_ok();
    for &m in &fam.window {
        for &n in &fam.window {
            out.push((EquationId::TT, m, n, residual_tt(fam.h(m), fam.h(n), m, n, p)));
        }
    }
    for eq in [EquationId::TE, EquationId::EE] {
        for &m in &fam.window {
            for &n in &fam.window {
                if !in_window(m + n) {
                    continue;
                }
                let r = match eq {
                    EquationId::TE => residual_te(fam, m, n, p),
                    EquationId::EE => residual_ee(fam, m, n, p),
                    EquationId::TT => unreachable!(),
                };
                out.push((eq, m, n, r));
            }
        }
    }
    out
}

/// Solves the translation-invariance equation `F = F(d1 - q1, d2 - q2)` by
/// exact nullspace computation, one coefficient-space regime per shift:
///
/// * `q = 0`: every polynomial of degree at most `deg` qualifies.
/// * exactly one component zero: the equation itself forces `F` univariate
///   in the untranslated variable, and the full space of degree at most
///   `deg` is searched.
/// * both components nonzero: the solutions inside the affine-linear slice
///   are the constants together with the invariant form `q2 d1 - q1 d2`.
///   Higher powers of that form also satisfy the equation, but the
///   classification machinery only consumes the affine-linear shapes, so
///   the search space is capped at degree 1.
///
/// Basis vectors are primitive and ordered by their leading free monomial in
/// graded-lex order.
pub fn solve_translation_invariance(q1: &Scalar, q2: &Scalar, deg: u32) -> Vec<Poly> {
    let cap = if !q1.is_zero() && !q2.is_zero() {
        deg.min(1)
    } else {
        deg
    };
    let monos = monomials_up_to(cap);
    let mut rows: BTreeMap<Exponents, SparseRow> = BTreeMap::new();
    for (col, &(e1, e2)) in monos.iter().enumerate() {
        let mono = Poly::monomial(e1, e2, Scalar::one());
        let defect = &mono - &mono.shift(q1, q2);
        for (exps, c) in defect.terms() {
            rows.entry(*exps).or_default().insert(col, c.clone());
        }
    }
    let mut rref = Rref::new(monos.len());
    for row in rows.into_values() {
        rref.insert(row);
    }
    rref.nullspace()
        .into_iter()
        .map(|v| {
            let mut f = Poly::zero();
            for (col, c) in v.into_iter().enumerate() {
                let (e1, e2) = monos[col];
                f = &f + &Poly::monomial(e1, e2, c);
            }
            f
        })
        .collect()
}

/// Result of solving the `TE` system for the `h`-side.
pub struct HSolveOutcome {
    /// Basis of `h`-families solving every windowed `TE` constraint with the
    /// given `g`-side, coefficientwise primitive.
    pub basis: Vec<BTreeMap<Index, Poly>>,
    /// `basis.len()`, the solution-space dimension for the degree bound.
    pub dimension: usize,
    /// Which basis members also satisfy the quadratic `TT` constraints.
    pub tt_survivors: Vec<bool>,
    pub surviving_dimension: usize,
    /// Whether the family's own `h`-side lies in the solution space.
    pub classified_in_span: bool,
    /// Whether the family's own `h`-side passes the `TT` filter.
    pub classified_passes_tt: bool,
}

/// Does an `h`-family satisfy every windowed `TT` constraint?
pub fn tt_filter_passes(
    h: &BTreeMap<Index, Poly>,
    window: &[Index],
    p: &AlgebraParams,
) -> bool {
    window.iter().all(|&m| {
        window
            .iter()
            .all(|&n| residual_tt(&h[&m], &h[&n], m, n, p).is_zero())
    })
}

/// Solves the `TE` constraints for an unknown `h`-family of degree at most
/// `deg`, with the `g`-side fixed to `fam`'s. The system is linear in `h`;
/// the solution space is computed as an exact nullspace with columns ordered
/// by graded-lex monomial, then window position.
pub fn solve_h_linear(
    fam: &ActionFamily,
    p: &AlgebraParams,
    deg: u32,
) -> Result<HSolveOutcome> {
    let window = fam.window();
    let monos = monomials_up_to(deg);
    let nwin = window.len();
    let col = |mono_idx: usize, win_idx: usize| mono_idx * nwin + win_idx;
    let win_pos: BTreeMap<Index, usize> =
        window.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let mut all_rows: Vec<SparseRow> = Vec::new();
    for &m in window {
        for &n in window {
            let Some(&sum_pos) = win_pos.get(&(m + n)) else {
                continue;
            };
            let g_m = fam.g(m);
            let g_m_shifted = shift_by_index_plus_p(g_m, n, p);
            let factor = det2(&n.shifted(p), &m.shifted(p));
            // Rows for this index pair: one linear equation per monomial of
            // the residual  h_n(d-m) g_m - g_m(d-n-p) h_n - factor h_{m+n}.
            let mut pair_rows: BTreeMap<Exponents, SparseRow> = BTreeMap::new();
            for (mono_idx, &(e1, e2)) in monos.iter().enumerate() {
                let mu = Poly::monomial(e1, e2, Scalar::one());
                let contribution = &(&shift_by_index(&mu, m) * g_m) - &(&g_m_shifted * &mu);
                for (exps, c) in contribution.terms() {
                    let row = pair_rows.entry(*exps).or_default();
                    let slot = row.entry(col(mono_idx, win_pos[&n])).or_insert_with(Scalar::zero);
                    *slot = &*slot + c;
                }
                let row = pair_rows.entry((e1, e2)).or_default();
                let slot = row.entry(col(mono_idx, sum_pos)).or_insert_with(Scalar::zero);
                *slot = &*slot - &factor;
            }
            for (_, mut row) in pair_rows {
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    all_rows.push(row);
                }
            }
        }
    }
    if all_rows.is_empty() {
        return Err(Error::Window(
            "window generates no T/E consistency constraints".into(),
        ));
    }

    let mut rref = Rref::new(monos.len() * nwin);
    for row in &all_rows {
        rref.insert(row.clone());
    }
    let basis: Vec<BTreeMap<Index, Poly>> = rref
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut family: BTreeMap<Index, Poly> =
                window.iter().map(|m| (*m, Poly::zero())).collect();
            for (c, coeff) in v.into_iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let (e1, e2) = monos[c / nwin];
                let m = window[c % nwin];
                let entry = family.get_mut(&m).expect("window index");
                *entry = &*entry + &Poly::monomial(e1, e2, coeff);
            }
            family
        })
        .collect();

    // The family's own h-side, as a coefficient vector (when it fits the
    // degree bound).
    let mono_pos: BTreeMap<Exponents, usize> =
        monos.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut classified_vec = Some(vec![Scalar::zero(); monos.len() * nwin]);
    'outer: for (win_idx, m) in window.iter().enumerate() {
        for (exps, c) in fam.h(*m).terms() {
            match mono_pos.get(exps) {
                Some(&mono_idx) => {
                    classified_vec.as_mut().expect("set above")[col(mono_idx, win_idx)] =
                        c.clone();
                }
                None => {
                    classified_vec = None;
                    break 'outer;
                }
            }
        }
    }
    let classified_in_span = classified_vec
        .map(|v| maps_to_zero(&all_rows, &v))
        .unwrap_or(false);

    let tt_survivors: Vec<bool> = basis
        .iter()
        .map(|h| tt_filter_passes(h, window, p))
        .collect();
    let surviving_dimension = tt_survivors.iter().filter(|s| **s).count();
    let classified_passes_tt = tt_filter_passes(fam.h_family(), window, p);
    Ok(HSolveOutcome {
        dimension: basis.len(),
        basis,
        tt_survivors,
        surviving_dimension,
        classified_in_span,
        classified_passes_tt,
    })
}

/// The probe indices consulted by [`recover_parameters`], in consultation
/// order: the unit probes pin `lambda` and the shift parameter, `(0,0)` pins
/// the `T`-side constant.
pub const RECOVERY_PROBES: [Index; 5] = [
    Index::new(1, 0),
    Index::new(-1, 0),
    Index::new(0, 1),
    Index::new(0, -1),
    Index::new(0, 0),
];

fn not_classified(msg: &str) -> Error {
    Error::NotClassified(msg.into())
}

/// Recovers `lambda_i` for one axis direction from `g`-probes.
///
/// For the probe `m` the classified shape is `lambda^m (X_p + X_m - D a)`
/// whose linear part `(p2+m2) d1 - (p1+m1) d2` is known; the first probe with
/// a nonzero known linear part yields the scale. Probes whose shape is
/// identically zero (possible only when `p2 = 0`, `p1 = -m1`) are skipped;
/// the opposite-sign probe then never degenerates.
fn lambda_from_g(
    fam: &ActionFamily,
    p: &AlgebraParams,
    probes: [Index; 2],
) -> Result<Option<Scalar>> {
    for m in probes {
        let s1 = &p.p2 + &Scalar::from_int(m.m2);
        let s2 = -&(&p.p1 + &Scalar::from_int(m.m1));
        let g = fam.g(m);
        let observed = if !s1.is_zero() {
            g.coeff(1, 0).checked_div(&s1)
        } else if !s2.is_zero() {
            g.coeff(0, 1).checked_div(&s2)
        } else {
            continue;
        };
        let c = observed.map_err(|_| not_classified("degenerate g-probe"))?;
        if c.is_zero() {
            return Err(not_classified(
                "g-probe has a vanishing leading coefficient where the classified shape does not",
            ));
        }
        // lambda^(+1) or lambda^(-1) depending on the probe direction.
        let exp = m.m1 + m.m2; // exactly +-1 for unit probes
        return Ok(Some(if exp >= 0 { c } else { c.inv().expect("nonzero") }));
    }
    Ok(None)
}

/// Recovers the defining record of a classified family presented as a black
/// box over `p`. Requires the five [`RECOVERY_PROBES`] inside the window.
///
/// `lambda` and the shift parameter are read from the `g`-probes (preferred;
/// their leading coefficients are never degenerate for a classified family),
/// the `T`-side constants from the `h`-probes; when every `g`-probe for one
/// axis is shape-degenerate the scale falls back to `h_probe / b0`. The
/// candidate record is then re-expanded over the probes and compared with
/// the oracle's responses; any mismatch rejects the family as unclassified.
pub fn recover_parameters(p: &AlgebraParams, fam: &ActionFamily) -> Result<ModuleSpec> {
    for probe in RECOVERY_PROBES {
        if fam.window.binary_search(&probe).is_err() {
            return Err(Error::Precondition(format!(
                "recovery needs probe {probe} inside the window"
            )));
        }
    }
    let b0 = fam.h(Index::ZERO).coeff(0, 0);
    let candidate = if p.is_zero() {
        // g_(1,0) = -lambda1 (d2 + beta2), g_(0,1) = lambda2 (d1 + beta1).
        let c_d2 = fam.g(Index::new(1, 0)).coeff(0, 1);
        let c_d1 = fam.g(Index::new(0, 1)).coeff(1, 0);
        if c_d2.is_zero() || c_d1.is_zero() {
            return Err(not_classified("unit g-probes must have full linear rank"));
        }
        let lambda1 = -&c_d2;
        let lambda2 = c_d1.clone();
        let beta2 = fam.g(Index::new(1, 0)).coeff(0, 0).checked_div(&c_d2)?;
        let beta1 = fam.g(Index::new(0, 1)).coeff(0, 0).checked_div(&c_d1)?;
        let k = fam
            .h(Index::new(1, 0))
            .coeff(0, 0)
            .checked_div(&lambda1)
            .expect("lambda1 nonzero");
        ModuleSpec::zero_p(lambda1, lambda2, beta1, beta2, b0, k)
            .map_err(|e| not_classified(&e.to_string()))?
    } else {
        let lambda1 = match lambda_from_g(fam, p, [Index::new(1, 0), Index::new(-1, 0)])? {
            Some(l) => l,
            None => lambda_fallback_from_h(fam, Index::new(1, 0), &b0)?,
        };
        let lambda2 = match lambda_from_g(fam, p, [Index::new(0, 1), Index::new(0, -1)])? {
            Some(l) => l,
            None => lambda_fallback_from_h(fam, Index::new(0, 1), &b0)?,
        };
        let spec_stub = ModuleSpec::nonzero_p(
            p.clone(),
            lambda1.clone(),
            lambda2.clone(),
            Scalar::zero(),
            b0.clone(),
        )
        .map_err(|e| not_classified(&e.to_string()))?;
        // First probe with Delta_m != 0 exposes alpha through the constant
        // term of g_m = lambda^m (X_p + X_m - Delta_m alpha).
        let mut alpha = None;
        for m in [Index::new(1, 0), Index::new(0, 1), Index::new(-1, 0), Index::new(0, -1)] {
            let delta = delta_m(p, m);
            if delta.is_zero() {
                continue;
            }
            let scale = &spec_stub.lambda_pow(m) * &delta;
            alpha = Some(-&fam.g(m).coeff(0, 0).checked_div(&scale)?);
            break;
        }
        let alpha = alpha.expect("p != 0 guarantees a probe with Delta_m != 0");
        ModuleSpec::nonzero_p(p.clone(), lambda1, lambda2, alpha, b0)
            .map_err(|e| not_classified(&e.to_string()))?
    };

    // Certify: the candidate must reproduce the oracle on every probe.
    let expected = ActionFamily::from_spec(&candidate, &RECOVERY_PROBES)?;
    for m in RECOVERY_PROBES {
        if fam.g(m) != expected.g(m) || fam.h(m) != expected.h(m) {
            return Err(not_classified(&format!(
                "probe {m} disagrees with every classified shape"
            )));
        }
    }
    Ok(candidate)
}

/// Last-resort scale recovery `lambda = h_probe / b0` for shape-degenerate
/// `g`-probes; needs a nondegenerate `T`-side.
fn lambda_fallback_from_h(fam: &ActionFamily, probe: Index, b0: &Scalar) -> Result<Scalar> {
    let lam = fam
        .h(probe)
        .coeff(0, 0)
        .checked_div(b0)
        .map_err(|_| not_classified("cannot recover lambda: g-probes degenerate and b0 = 0"))?;
    if lam.is_zero() {
        return Err(not_classified("recovered lambda is zero"));
    }
    Ok(lam)
}
