//! Isomorphism decisions between rank-one polynomial modules, certified by
//! explicit intertwiners.
//!
//! Two modules sharing `p`, `lambda`, and the `T`-side constants are linked
//! by the variable shift that rewrites one distinguished basis into the
//! other:
//!
//! ```text
//! p != 0:  phi(f) = f(d - p*(alpha - gamma))   (alpha: source, gamma: target)
//! p  = 0:  phi(f) = f(d - (beta - beta'))
//! ```
//!
//! `phi` intertwines every `T(m)` and `E(m)` action. The degree derivations
//! see the shift: their residual is a nonzero constant multiple of `phi(f)`
//! whenever the shift is nonzero, which is exactly why modules isomorphic
//! over `L(p)` can fall apart over the extended algebra.

use crate::error::{Error, Result};
use crate::lie::{Flavor, Generator};
use crate::modules::ModuleSpec;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// The shift offset carrying `src`'s distinguished basis to `dst`'s.
fn phi_offset(src: &ModuleSpec, dst: &ModuleSpec) -> Result<(Scalar, Scalar)> {
    match (src, dst) {
        (
            ModuleSpec::NonzeroP { p, lambda1, lambda2, alpha, b0 },
            ModuleSpec::NonzeroP {
                p: p2,
                lambda1: m1,
                lambda2: m2,
                alpha: gamma,
                b0: c0,
            },
        ) => {
            if p != p2 {
                return Err(Error::Incompatible("records live over different p".into()));
            }
            if lambda1 != m1 || lambda2 != m2 || b0 != c0 {
                return Err(Error::Incompatible(
                    "intertwiner requires equal lambda and b0".into(),
                ));
            }
            let diff = alpha - gamma;
            Ok((&p.p1 * &diff, &p.p2 * &diff))
        }
        (
            ModuleSpec::ZeroP { lambda1, lambda2, beta1, beta2, b0, k },
            ModuleSpec::ZeroP {
                lambda1: m1,
                lambda2: m2,
                beta1: c1,
                beta2: c2,
                b0: d0,
                k: k2,
            },
        ) => {
            if lambda1 != m1 || lambda2 != m2 || b0 != d0 || k != k2 {
                return Err(Error::Incompatible(
                    "intertwiner requires equal lambda, b0, and k".into(),
                ));
            }
            Ok((beta1 - c1, beta2 - c2))
        }
        _ => Err(Error::Incompatible(
            "records live over different p".into(),
        )),
    }
}

/// The candidate intertwiner from `src` to `dst` applied to `f`.
pub fn phi_map(f: &Poly, src: &ModuleSpec, dst: &ModuleSpec) -> Result<Poly> {
    let (s1, s2) = phi_offset(src, dst)?;
    Ok(f.shift(&s1, &s2))
}

/// `phi(act_src(x, f)) - act_dst(x, phi(f))`: zero for the graded generators,
/// and a constant multiple of `phi(f)` for `D1`/`D2`.
pub fn intertwine_residual(
    x: &Generator,
    f: &Poly,
    src: &ModuleSpec,
    dst: &ModuleSpec,
) -> Result<Poly> {
    let through_src = phi_map(&src.act_generator(x, f), src, dst)?;
    let through_dst = dst.act_generator(x, &phi_map(f, src, dst)?);
    Ok(&through_src - &through_dst)
}

/// Decides isomorphism of two module records over the chosen algebra.
///
/// Records must be of the same shape over the same `p`. Over `L(p)` the
/// class is determined by `lambda` and the `T`-side constants; the extended
/// algebra additionally pins the shift parameter (`alpha` resp. `beta`).
pub fn are_isomorphic(a: &ModuleSpec, b: &ModuleSpec, flavor: Flavor) -> Result<bool> {
    match (a, b) {
        (
            ModuleSpec::NonzeroP { p, lambda1, lambda2, alpha, b0 },
            ModuleSpec::NonzeroP {
                p: q,
                lambda1: m1,
                lambda2: m2,
                alpha: gamma,
                b0: c0,
            },
        ) => {
            if p != q {
                return Err(Error::Incompatible("records live over different p".into()));
            }
            let plain = lambda1 == m1 && lambda2 == m2 && b0 == c0;
            Ok(match flavor {
                Flavor::PlainL => plain,
                Flavor::ExtendedL => plain && alpha == gamma,
            })
        }
        (
            ModuleSpec::ZeroP { lambda1, lambda2, beta1, beta2, b0, k },
            ModuleSpec::ZeroP {
                lambda1: m1,
                lambda2: m2,
                beta1: c1,
                beta2: c2,
                b0: d0,
                k: k2,
            },
        ) => {
            let plain = lambda1 == m1 && lambda2 == m2 && b0 == d0 && k == k2;
            Ok(match flavor {
                Flavor::PlainL => plain,
                Flavor::ExtendedL => plain && beta1 == c1 && beta2 == c2,
            })
        }
        _ => Err(Error::Incompatible(
            "records live over different p".into(),
        )),
    }
}
