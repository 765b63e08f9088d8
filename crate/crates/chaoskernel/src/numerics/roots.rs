use crate::error::{Error, Result};
use crate::scalar::Real;

/// Iteration cap shared by bisection and polish phases.
pub const ROOT_ITERATION_CAP: usize = 200;

const BRACKET_WIDTH: f64 = 1e-6;

/// Root of `f` in `[lo, hi]`: bisection down to a bracket of width 1e-6, then a
/// safeguarded Newton polish with a central-difference slope.
///
/// Converges when `|f(r)| ≤ tol` or the bracket collapses to a few ulps.
pub fn find_root_bracketed<T, F>(f: F, lo: T, hi: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let slope = |x: T| {
        let h = T::lit(1e-7) * x.abs().max(T::one());
        (f(x + h) - f(x - h)) / (h + h)
    };
    solve(&f, &slope, lo, hi, tol)
}

/// As [`find_root_bracketed`] with an analytic derivative for the polish phase.
pub fn find_root_bracketed_newton<T, F, D>(f: F, df: D, lo: T, hi: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
    D: Fn(T) -> T,
{
    solve(&f, &df, lo, hi, tol)
}

fn solve<T: Real>(f: &dyn Fn(T) -> T, df: &dyn Fn(T) -> T, lo: T, hi: T, tol: T) -> Result<T> {
    const OP: &str = "find_root_bracketed";
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::invalid(OP, format!("bad bracket [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if !(fa.is_finite() && fb.is_finite()) {
        return Err(Error::NonFinite { op: OP });
    }
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { op: OP, lo: lo.as_f64(), hi: hi.as_f64() });
    }
    let half = T::lit(0.5);
    let width = T::lit(BRACKET_WIDTH);
    let ulps = T::epsilon() * T::lit(4.0);

    let mut iterations = 0;
    while b - a > width * a.abs().max(b.abs()).max(T::one()) {
        iterations += 1;
        if iterations > ROOT_ITERATION_CAP {
            return Err(Error::NoConvergence { op: OP, iterations });
        }
        let m = a + (b - a) * half;
        let fm = f(m);
        if fm == T::zero() {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }

    let mut x = a + (b - a) * half;
    for _ in 0..ROOT_ITERATION_CAP {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite { op: OP });
        }
        if fx.abs() <= tol || b - a <= ulps * x.abs().max(T::min_positive_value()) {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        let next = if d != T::zero() && newton > a && newton < b {
            newton
        } else {
            a + (b - a) * half
        };
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(Error::NoConvergence { op: OP, iterations: 2 * ROOT_ITERATION_CAP })
}
