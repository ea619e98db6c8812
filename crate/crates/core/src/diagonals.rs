//! Diagonal maps `U(x) = σ_x⁻¹(x)`, `T(x) = τ_x⁻¹(x)`, `T̂(x) = σ_{T(x)}(x)`,
//! `Û(x) = τ_{U(x)}(x)` and the identities relating them.
//!
//! `Û` and `T̂` are always computed from these formulas, never through `r⁻¹`,
//! so each needs only one-sided non-degeneracy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm;
use crate::report::{Check, CheckReport};
use crate::solution::{FiniteSolution, Tables};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalMaps {
    pub u: Option<Vec<usize>>,
    pub t: Option<Vec<usize>>,
    pub u_hat: Option<Vec<usize>>,
    pub t_hat: Option<Vec<usize>>,
}

pub fn diagonal_maps(sol: &Tables) -> DiagonalMaps {
    let n = sol.n();
    let (u, u_hat) = if sol.is_left_nondegenerate() {
        let u: Vec<usize> = (0..n)
            .map(|x| perm::inverse(sol.sigma_row(x))[x] as usize)
            .collect();
        let u_hat = (0..n).map(|x| sol.tau(u[x], x)).collect();
        (Some(u), Some(u_hat))
    } else {
        (None, None)
    };
    let (t, t_hat) = if sol.is_right_nondegenerate() {
        let t: Vec<usize> = (0..n)
            .map(|x| perm::inverse(sol.tau_row(x))[x] as usize)
            .collect();
        let t_hat = (0..n).map(|x| sol.sigma(t[x], x)).collect();
        (Some(t), Some(t_hat))
    } else {
        (None, None)
    };
    DiagonalMaps { u, t, u_hat, t_hat }
}

/// The four maps of a non-degenerate solution, all present.
struct Full {
    u: Vec<usize>,
    t: Vec<usize>,
    u_hat: Vec<usize>,
    t_hat: Vec<usize>,
}

fn full(sol: &Tables) -> Result<Full> {
    if !sol.is_nondegenerate() {
        return Err(Error::NotNondegenerate);
    }
    let d = diagonal_maps(sol);
    Ok(Full {
        u: d.u.expect("left non-degenerate"),
        t: d.t.expect("right non-degenerate"),
        u_hat: d.u_hat.expect("left non-degenerate"),
        t_hat: d.t_hat.expect("right non-degenerate"),
    })
}

fn rows_equal(sol: &Tables, a: usize, b: usize, tau: bool) -> bool {
    if tau {
        sol.tau_row(a) == sol.tau_row(b)
    } else {
        sol.sigma_row(a) == sol.sigma_row(b)
    }
}

/// Pointwise identities among `U, T, Û, T̂` on a non-degenerate solution.
pub fn check_diagonal_identities(sol: &FiniteSolution) -> Result<CheckReport> {
    let d = full(sol)?;
    let n = sol.n();
    let mut checks = vec![
        Check::new("sigma_{Uhat(x)} = sigma_{U(x)}"),
        Check::new("tau_{That(x)} = tau_{T(x)}"),
        Check::new("Uhat(x) = sigma_{Uhat(x)}(Uhat(U(x)))"),
        Check::new("That(x) = tau_{That(x)}(That(T(x)))"),
        Check::new("tau_x(That(x)) = sigma_x(Uhat(x))"),
        Check::new("That(x) = sigma_{That(x)}(x)"),
        Check::new("Uhat(x) = tau_{Uhat(x)}(x)"),
    ];
    for x in 0..n {
        let w = || vec![x];
        checks[0].record(rows_equal(sol, d.u_hat[x], d.u[x], false), w);
        checks[1].record(rows_equal(sol, d.t_hat[x], d.t[x], true), w);
        checks[2].record(d.u_hat[x] == sol.sigma(d.u_hat[x], d.u_hat[d.u[x]]), w);
        checks[3].record(d.t_hat[x] == sol.tau(d.t_hat[x], d.t_hat[d.t[x]]), w);
        checks[4].record(sol.tau(x, d.t_hat[x]) == sol.sigma(x, d.u_hat[x]), w);
        checks[5].record(d.t_hat[x] == sol.sigma(d.t_hat[x], x), w);
        checks[6].record(d.u_hat[x] == sol.tau(d.u_hat[x], x), w);
    }
    Ok(CheckReport { checks })
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

fn identity_check(name: &str, map: &[usize]) -> Check {
    let mut c = Check::new(name);
    for (x, &v) in map.iter().enumerate() {
        c.record(v == x, || vec![x]);
    }
    c
}

fn equality_check(name: &str, a: &[usize], b: &[usize]) -> Check {
    let mut c = Check::new(name);
    for x in 0..a.len() {
        c.record(a[x] == b[x], || vec![x]);
    }
    c
}

fn is_permutation(map: &[usize]) -> bool {
    let bytes: Vec<u8> = map.iter().map(|&v| v as u8).collect();
    perm::is_permutation(&bytes)
}

/// Global statements about the diagonals of a non-degenerate solution:
/// `U`, `T` are bijections with inverses `T̂`, `Û`; `U` and `T` commute;
/// the solution is bijective; and the fixed-point statements
/// `r(T(x), x) = (T(x), x) ∀x` and `r(x, U(x)) = (x, U(x)) ∀x` are equivalent.
pub fn check_diagonal_theorems(sol: &FiniteSolution) -> Result<CheckReport> {
    let d = full(sol)?;
    let n = sol.n();
    let mut report = CheckReport::default();

    let mut perms = Check::new("U and T are permutations");
    perms.record(is_permutation(&d.u), || vec![0]);
    perms.record(is_permutation(&d.t), || vec![1]);
    report.push(perms);

    report.push(identity_check("U∘That = id", &compose(&d.u, &d.t_hat)));
    report.push(identity_check("That∘U = id", &compose(&d.t_hat, &d.u)));
    report.push(identity_check("T∘Uhat = id", &compose(&d.t, &d.u_hat)));
    report.push(identity_check("Uhat∘T = id", &compose(&d.u_hat, &d.t)));
    report.push(equality_check("U∘T = T∘U", &compose(&d.u, &d.t), &compose(&d.t, &d.u)));

    let mut bij = Check::new("non-degenerate implies bijective");
    let collision = sol.r_collision();
    bij.record(collision.is_none(), || {
        let ((a, b), (c, e), _) = collision.unwrap();
        vec![a, b, c, e]
    });
    report.push(bij);

    let t_fixed = (0..n).all(|x| sol.r(d.t[x], x) == (d.t[x], x));
    let u_fixed = (0..n).all(|x| sol.r(x, d.u[x]) == (x, d.u[x]));
    let mut fixed = Check::new("r(T(x),x)=(T(x),x) for all x iff r(x,U(x))=(x,U(x)) for all x");
    fixed.record(t_fixed == u_fixed, || vec![t_fixed as usize, u_fixed as usize]);
    report.push(fixed);

    let mut sqf = Check::new("square-free iff U = T = id");
    let ids = perm::is_identity(&to_bytes(&d.u)) && perm::is_identity(&to_bytes(&d.t));
    sqf.record(sol.is_square_free() == ids, Vec::new);
    report.push(sqf);

    if sol.is_involutive() {
        report.push(identity_check("involutive: U∘T = id", &compose(&d.u, &d.t)));
    }
    Ok(report)
}

fn to_bytes(map: &[usize]) -> Vec<u8> {
    map.iter().map(|&v| v as u8).collect()
}
