//! q-cycle sets `(X, ·, :)` and their correspondence with left non-degenerate solutions.
//!
//! Axioms, for all `x, y, z`:
//!
//! ```text
//! (x·y)·(x·z) = (y:x)·(y·z)
//! (x·y):(x·z) = (y:x)·(y:z)
//! (x·y):(x:z) = (y:x):(y:z)
//! ```
//!
//! together with bijectivity of every `y ↦ x·y`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm;
use crate::report::{Check, CheckReport};
use crate::solution::{FiniteSolution, Tables};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QCycleSet {
    n: usize,
    dot: Vec<u8>,
    colon: Vec<u8>,
}

fn flatten(name: &'static str, n: usize, rows: &[Vec<usize>]) -> Result<Vec<u8>> {
    if rows.len() != n {
        return Err(Error::ShapeMismatch { table: name, expected: n });
    }
    let mut out = Vec::with_capacity(n * n);
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::ShapeMismatch { table: name, expected: n });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(Error::MalformedTable { table: name, n, row, col, value });
            }
            out.push(value as u8);
        }
    }
    Ok(out)
}

impl QCycleSet {
    /// Builds the tables without checking the axioms; see [`validate_qcycle`].
    pub fn from_rows(dot: &[Vec<usize>], colon: &[Vec<usize>]) -> Result<Self> {
        let n = dot.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > u8::MAX as usize {
            return Err(Error::SizeTooLarge { n, limit: u8::MAX as usize });
        }
        Ok(QCycleSet { n, dot: flatten("dot", n, dot)?, colon: flatten("colon", n, colon)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `x·y`
    pub fn dot(&self, x: usize, y: usize) -> usize {
        self.dot[x * self.n + y] as usize
    }

    /// `x:y`
    pub fn colon(&self, x: usize, y: usize) -> usize {
        self.colon[x * self.n + y] as usize
    }

    pub fn dot_row(&self, x: usize) -> &[u8] {
        &self.dot[x * self.n..(x + 1) * self.n]
    }

    pub fn colon_row(&self, x: usize) -> &[u8] {
        &self.colon[x * self.n..(x + 1) * self.n]
    }

    pub fn dot_rows(&self) -> Vec<Vec<usize>> {
        self.dot.chunks(self.n).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    pub fn colon_rows(&self) -> Vec<Vec<usize>> {
        self.colon.chunks(self.n).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }
}

/// Axiom violations as `[axiom, x, y, z]` (axiom numbered 1–3), plus
/// `[0, x, a, b]` for each dot row `x` where `x·a = x·b`, `a < b` is the first collision.
pub fn validate_qcycle(q: &QCycleSet) -> Vec<[usize; 4]> {
    let n = q.n();
    let mut out = Vec::new();
    for x in 0..n {
        if let Some((a, b)) = perm::first_collision(q.dot_row(x)) {
            out.push([0, x, a, b]);
        }
    }
    let (d, c) = (|a, b| q.dot(a, b), |a, b| q.colon(a, b));
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if d(d(x, y), d(x, z)) != d(c(y, x), d(y, z)) {
                    out.push([1, x, y, z]);
                }
                if c(d(x, y), d(x, z)) != d(c(y, x), c(y, z)) {
                    out.push([2, x, y, z]);
                }
                if c(d(x, y), c(x, z)) != c(c(y, x), c(y, z)) {
                    out.push([3, x, y, z]);
                }
            }
        }
    }
    out
}

pub fn is_regular(q: &QCycleSet) -> bool {
    (0..q.n()).all(|x| perm::is_permutation(q.colon_row(x)))
}

/// `x·y = σ_x⁻¹(y)`, `x:y = τ_{σ_y⁻¹(x)}(y)`.
pub fn from_solution(sol: &Tables) -> Result<QCycleSet> {
    let n = sol.n();
    if let Some(row) = (0..n).find(|&x| !perm::is_permutation(sol.sigma_row(x))) {
        return Err(Error::NotLeftNondegenerate { row });
    }
    let inv: Vec<Vec<u8>> = (0..n).map(|x| perm::inverse(sol.sigma_row(x))).collect();
    let dot: Vec<u8> = inv.concat();
    let mut colon = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            colon.push(sol.tau(inv[y][x] as usize, y) as u8);
        }
    }
    Ok(QCycleSet { n, dot, colon })
}

/// Inverse of [`from_solution`]: `σ_x = (x·)⁻¹` and `τ_a(b) = ((b·)⁻¹(a)):b`.
pub fn to_solution(q: &QCycleSet) -> Result<FiniteSolution> {
    if let Some(v) = validate_qcycle(q).first() {
        let msg = match v[0] {
            0 => format!("dot row {} is not a permutation ({}·{} = {}·{})", v[1], v[1], v[2], v[1], v[3]),
            k => format!("axiom {k} fails at (x, y, z) = ({}, {}, {})", v[1], v[2], v[3]),
        };
        return Err(Error::InvalidQCycle(msg));
    }
    let n = q.n();
    let inv: Vec<Vec<u8>> = (0..n).map(|x| perm::inverse(q.dot_row(x))).collect();
    let sigma = inv.concat();
    let mut tau = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            tau.push(q.colon(inv[b][a] as usize, b) as u8);
        }
    }
    FiniteSolution::new(Tables::from_flat(n, sigma, tau)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QCycleDiagonals {
    /// `U(x) = x·x`
    pub u: Vec<usize>,
    /// `Û(x) = x:x`
    pub u_hat: Vec<usize>,
    /// Points where `U(Û(x)) ≠ Û(U(x))`.
    pub non_commuting: Vec<usize>,
}

impl QCycleDiagonals {
    pub fn commute(&self) -> bool {
        self.non_commuting.is_empty()
    }
}

pub fn qcycle_diagonals(q: &QCycleSet) -> QCycleDiagonals {
    let n = q.n();
    let u: Vec<usize> = (0..n).map(|x| q.dot(x, x)).collect();
    let u_hat: Vec<usize> = (0..n).map(|x| q.colon(x, x)).collect();
    let non_commuting = (0..n).filter(|&x| u[u_hat[x]] != u_hat[u[x]]).collect();
    QCycleDiagonals { u, u_hat, non_commuting }
}

/// Quotient by `x ~ y ⇔ x·z = y·z ∧ x:z = y:z ∀z`, blocks re-indexed by
/// increasing representative; `None` when the relation is not compatible
/// with both operations.
pub fn colon_quotient(q: &QCycleSet) -> Option<QCycleSet> {
    let n = q.n();
    let p = crate::retract::Partition::from_key(n, |x| (q.dot_row(x), q.colon_row(x)));
    let compatible = |op: &dyn Fn(usize, usize) -> usize| {
        (0..n).all(|x1| {
            (0..n).all(|x2| {
                !p.same(x1, x2)
                    || (0..n).all(|y1| (0..n).all(|y2| !p.same(y1, y2) || p.same(op(x1, y1), op(x2, y2))))
            })
        })
    };
    if !compatible(&|a, b| q.dot(a, b)) || !compatible(&|a, b| q.colon(a, b)) {
        return None;
    }
    let reps = p.representatives();
    let index = p.block_index();
    let m = reps.len();
    let mut dot = Vec::with_capacity(m * m);
    let mut colon = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            dot.push(index[q.dot(a, b)] as u8);
            colon.push(index[q.colon(a, b)] as u8);
        }
    }
    Some(QCycleSet { n: m, dot, colon })
}

/// Round trips and diagonal agreement for a left non-degenerate solution.
pub fn check_correspondence(sol: &FiniteSolution) -> Result<CheckReport> {
    let q = from_solution(sol)?;
    let mut report = CheckReport::default();

    let mut axioms = Check::new("from_solution satisfies the axioms");
    for v in validate_qcycle(&q) {
        axioms.record(false, || v.to_vec());
    }
    axioms.checked = axioms.checked.max(1);
    report.push(axioms);

    let mut round = Check::new("to_solution(from_solution(X)) = X");
    let back = to_solution(&q);
    round.record(back.as_ref().map(|b| b.tables() == sol.tables()).unwrap_or(false), Vec::new);
    report.push(round);

    let mut round_q = Check::new("from_solution(to_solution(q)) = q");
    let again = back.and_then(|b| from_solution(&b));
    round_q.record(again.map(|g| g == q).unwrap_or(false), Vec::new);
    report.push(round_q);

    let diag = qcycle_diagonals(&q);
    let mut commute = Check::new("U and Uhat commute");
    for &x in &diag.non_commuting {
        commute.record(false, || vec![x]);
    }
    commute.checked += 1;
    report.push(commute);

    let sd = crate::diagonals::diagonal_maps(sol);
    let mut agree = Check::new("q-cycle diagonals match U and Uhat");
    agree.record(sd.u.as_deref() == Some(&diag.u[..]), || vec![0]);
    agree.record(sd.u_hat.as_deref() == Some(&diag.u_hat[..]), || vec![1]);
    report.push(agree);

    if sol.is_bijective() {
        let mut regular = Check::new("regular solution gives a regular q-cycle set");
        regular.record(is_regular(&q), Vec::new);
        report.push(regular);
        let inv = crate::solution::invert(sol)?;
        let mut hat = Check::new("x:y = sigmahat_x^-1(y)");
        for x in 0..sol.n() {
            let row = inv.sigma_row(x);
            if perm::is_permutation(row) {
                let r = perm::inverse(row);
                for y in 0..sol.n() {
                    hat.record(q.colon(x, y) == r[y] as usize, || vec![x, y]);
                }
            } else {
                hat.record(false, || vec![x]);
            }
        }
        report.push(hat);
    }
    Ok(report)
}
