use super::instance::Mutation;
use super::{InequalityId, InequalityInstance, ZDomain};
use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_RADIUS: f64 = 1e3;
const UNIT_CIRCLE_TOL: f64 = 1e-12;

/// Both sides of the instance's inequality at `z`, as printed (not reordered
/// by the relation).
pub fn evaluate_sides(inst: &InequalityInstance, z: Complex64) -> Result<(f64, f64)> {
    let radius = z.norm();
    if !radius.is_finite() || radius > MAX_RADIUS {
        return Err(Error::InvalidArgument(format!("|z| = {radius} exceeds {MAX_RADIUS}")));
    }
    match inst.id.def().domain {
        ZDomain::Constant => return Ok(inst.cached.constant_sides.expect("constant entry")),
        ZDomain::UnitCircle if (radius - 1.0).abs() > UNIT_CIRCLE_TOL => {
            return Err(Error::InvalidArgument(format!("{} is evaluated on |z| = 1, got |z| = {radius}", inst.id)))
        }
        ZDomain::OutsideUnitDisk if radius < 1.0 - UNIT_CIRCLE_TOL => {
            return Err(Error::InvalidArgument(format!("{} is evaluated on |z| >= 1, got |z| = {radius}", inst.id)))
        }
        _ => {}
    }

    use InequalityId::*;
    let cache = &inst.cached;
    let spec = &inst.spec;
    let n = spec.n as i32;
    let s = spec.s() as i32;
    let k = spec.k;
    let beta = spec.beta;
    let kn = k.powi(n);
    let zs = z.powi(s);
    let (max, min) = (cache.max, cache.min);
    let p_at = inst.p.eval(z);

    // z^s G + beta c H, the combination shared by the polar forms
    let mixed = |g: Complex64, h: Complex64| (zs * g + beta * cache.c * h).norm();
    // b = beta L_s / (1 + k)^s
    let b = beta * cache.lambda / (1.0 + k).powi(s);
    let x = radius.powi(n) / kn * (cache.alpha_product + b).norm();
    let y = (zs + b).norm();
    // X' and Y' for the derivative forms
    let xd = radius.powi(n) / kn * (1.0 + beta / (1.0 + k).powi(s)).norm();
    let yd = beta.norm() / (1.0 + k).powi(s);
    let n_s = cache.n_s;

    let sides = match inst.id {
        TE1 | CES1 => {
            let f = inst.f.as_ref().expect("dominated entry has F");
            (mixed(cache.p_chain.eval(z), p_at), mixed(cache.f_chain.eval(z), f.eval(z)))
        }
        CE1 => (mixed(cache.p_chain.eval(z), p_at), n_s * x * max),
        CE2 => (mixed(cache.p_deriv.eval(z), p_at), n_s * xd * max),
        CE3 => {
            let f = inst.f.as_ref().expect("dominated entry has F");
            (mixed(cache.p_deriv.eval(z), p_at), mixed(cache.f_deriv.eval(z), f.eval(z)))
        }
        CE4 => (mixed(cache.p_chain.eval(z), p_at), n_s * x * min),
        CE5 => (mixed(cache.p_deriv.eval(z), p_at), n_s * xd * min),
        TE2 => {
            let y = if inst.mutation == Mutation::FlipTe2RhsSign { -y } else { y };
            (mixed(cache.p_chain.eval(z), p_at), 0.5 * n_s * (x + y) * max)
        }
        TE3 | CE11 => (
            mixed(cache.p_chain.eval(z), p_at),
            0.5 * n_s * ((x + y) * max - (x - y) * min),
        ),
        CE7 | CE8 => (
            mixed(cache.p_deriv.eval(z), p_at),
            0.5 * n_s * ((xd + yd) * max - (xd - yd) * min),
        ),
        CE9 => {
            let w = radius.powi(n - s) * cache.alpha_product.norm() / kn;
            (cache.p_chain.eval(z).norm(), 0.5 * n_s * ((w + 1.0) * max - (w - 1.0) * min))
        }
        CE10 => (
            cache.p_deriv.eval(z).norm(),
            n_s * radius.powi(n - s) / (2.0 * kn) * (max - min),
        ),
        AE | AWE => {
            let w = cache.alpha_product.norm() * radius.powi(n - s);
            let rhs = if inst.id == AE {
                0.5 * n_s * (w + 1.0) * max
            } else {
                0.5 * n_s * ((w + 1.0) * max - (w - 1.0) * min)
            };
            (cache.p_chain.eval(z).norm(), rhs)
        }
        LE2 | LE4 => (cache.p_chain.eval(z).norm(), cache.c * p_at.norm()),
        LE5 => {
            let own = mixed(cache.p_chain.eval(z), p_at);
            let reflected = kn * mixed(cache.r_chain.eval(z), cache.r_poly.eval(z));
            (own + reflected, n_s * (x + y) * max)
        }
        E1 | E2 | E3 | E4 | E5 | LE3 => unreachable!("constant entries return early"),
    };
    Ok(sides)
}

/// The subtracted min-term of the refined entries at `z`, e.g. for TE3 the
/// `n_s/2 (X - Y) m` that TE2's bound loses. `None` for entries without one.
pub fn min_term_bracket(inst: &InequalityInstance, z: Complex64) -> Result<Option<f64>> {
    use InequalityId::*;
    if !matches!(inst.id, TE3 | CE11 | CE7 | CE8 | CE9 | AWE) {
        return Ok(None);
    }
    // validates the domain
    evaluate_sides(inst, z)?;
    let cache = &inst.cached;
    let spec = &inst.spec;
    let (n, s, k) = (spec.n as i32, spec.s() as i32, spec.k);
    let radius = z.norm();
    let kn = k.powi(n);
    let b = spec.beta * cache.lambda / (1.0 + k).powi(s);
    let factor = match inst.id {
        TE3 | CE11 => radius.powi(n) / kn * (cache.alpha_product + b).norm() - (z.powi(s) + b).norm(),
        CE7 | CE8 => {
            let xd = radius.powi(n) / kn * (1.0 + spec.beta / (1.0 + k).powi(s)).norm();
            xd - spec.beta.norm() / (1.0 + k).powi(s)
        }
        CE9 => radius.powi(n - s) * cache.alpha_product.norm() / kn - 1.0,
        _ => cache.alpha_product.norm() * radius.powi(n - s) - 1.0,
    };
    Ok(Some(0.5 * cache.n_s * factor * cache.min))
}
