//! Small named solutions checked against values recomputed here by hand-rolled scans.

use ybe::diagonals::diagonal_maps;
use ybe::omega::{self, OmegaSymbol::*};
use ybe::qcycle::{self, QCycleSet};
use ybe::retract::{self, RetractKind};
use ybe::solution::{invert, properties};
use ybe::{Error, FiniteSolution, OmegaSymbol};

/// Three points a, b, c; σ = id, τ_a = τ_b = (a ↦ b, b ↦ c, c ↦ c), τ_c ≡ c.
fn exm1() -> FiniteSolution {
    let id = vec![0, 1, 2];
    FiniteSolution::from_rows(&[id.clone(), id.clone(), id], &[vec![1, 2, 2], vec![1, 2, 2], vec![2, 2, 2]]).unwrap()
}

fn z3group() -> FiniteSolution {
    let sigma: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + y) % 3).collect()).collect();
    FiniteSolution::from_rows(&sigma, &vec![vec![0; 3]; 3]).unwrap()
}

fn r(s: &FiniteSolution, x: usize, y: usize) -> (usize, usize) {
    (s.sigma_rows()[x][y], s.tau_rows()[y][x])
}

#[test]
fn exm1_properties() {
    let s = exm1();
    let p = properties(&s);
    assert!(p.braid_ok && p.left_nondegenerate);
    assert!(!p.right_nondegenerate && !p.bijective && !p.square_free && !p.involutive);
}

#[test]
fn exm1_first_r_collision() {
    let s = exm1();
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    let first = pairs
        .iter()
        .enumerate()
        .find_map(|(i, &a)| pairs[i + 1..].iter().find(|&&b| r(&s, a.0, a.1) == r(&s, b.0, b.1)).map(|&b| (a, b)))
        .unwrap();
    assert_eq!(first, ((0, 2), (1, 2)));
    assert_eq!(
        invert(&s),
        Err(Error::NotBijective { first: (0, 2), second: (1, 2), image: r(&s, 0, 2) })
    );
}

#[test]
fn exm1_retract_fails_on_tau() {
    let s = exm1();
    let p = retract::retract_relation(&s, RetractKind::Forward).unwrap();
    assert_eq!(p.blocks(), vec![vec![0, 1], vec![2]]);
    assert_eq!(retract::check_compatibility(&s, &p, Sigma).unwrap(), None);
    let w = retract::check_compatibility(&s, &p, Tau).unwrap().unwrap();
    assert_eq!(w, [0, 0, 0, 1]);
    // a ~ a and a ~ b, yet τ_a(a) = b and τ_a(b) = c lie in different blocks
    let tau = s.tau_rows();
    assert_eq!((tau[w[0]][w[2]], tau[w[1]][w[3]]), (1, 2));
    assert!(!p.same(1, 2));
    assert_eq!(retract::retract(&s), Err(Error::CompatibilityError { op: Tau, witness: w }));
}

#[test]
fn exm1_tau_tower_depends_on_its_base() {
    let s = exm1();
    let v = omega::is_k_permutational(&s, 3, &OmegaSymbol::BASIC).unwrap();
    assert!(!v.holds);
    let w = v.witness.unwrap();
    assert_eq!(w.word, vec![Tau, Tau, Tau]);
    let a = omega::omega_eval(&s, &w.word, w.x, &w.zs).unwrap();
    let b = omega::omega_eval(&s, &w.word, w.y.unwrap(), &w.zs).unwrap();
    assert_ne!(a, b);
}

#[test]
fn exm1_round_trips_through_qcycle() {
    let s = exm1();
    let q = qcycle::from_solution(&s).unwrap();
    assert!(qcycle::validate_qcycle(&q).is_empty());
    assert_eq!(qcycle::to_solution(&q).unwrap(), s);
}

#[test]
fn lyubashenko_cycle() {
    let f = [1, 2, 0];
    let s = FiniteSolution::lyubashenko(&f, &f).unwrap();
    let d = diagonal_maps(&s);
    assert_eq!(d.u, Some(vec![2, 0, 1]));
    assert_eq!(d.t, Some(vec![2, 0, 1]));
    let inv = invert(&s).unwrap();
    assert!(inv.sigma_rows().iter().chain(inv.tau_rows().iter()).all(|row| row == &vec![2, 0, 1]));
    assert_eq!(retract::mpl(&s), Ok(1));
    assert_eq!(retract::mpl_prime(&s), Ok(1));
    assert!(omega::is_k_permutational(&s, 1, &OmegaSymbol::BASIC).unwrap().holds);
    assert!(!omega::is_k_reductive(&s, 1).unwrap().holds);
    assert!(omega::is_k_reductive(&s, 2).unwrap().holds);
}

#[test]
fn derived_swap() {
    let s = FiniteSolution::lyubashenko(&[0, 1], &[1, 0]).unwrap();
    let d = diagonal_maps(&s);
    assert_eq!(d.u, Some(vec![0, 1]));
    assert_eq!(d.u_hat, Some(vec![1, 0]));
}

#[test]
fn z3_group_towers_keep_their_base() {
    let s = z3group();
    assert_eq!(omega::omega_eval(&s, &[Sigma, Sigma], 2, &[0, 0]).unwrap(), 2);
    for k in 1..=4 {
        assert!(!omega::is_k_permutational(&s, k, &OmegaSymbol::BASIC).unwrap().holds, "k={k}");
    }
    assert_eq!(diagonal_maps(&s).u, Some(vec![0, 0, 0]));
}

#[test]
fn constant_colon_qcycle() {
    let dot: Vec<Vec<usize>> = (0..3).map(|_| vec![0, 1, 2]).collect();
    let colon = vec![vec![0; 3]; 3];
    let q = QCycleSet::from_rows(&dot, &colon).unwrap();
    assert!(qcycle::validate_qcycle(&q).is_empty());
    assert!(!qcycle::is_regular(&q));
    let d = qcycle::qcycle_diagonals(&q);
    assert_eq!(d.u, vec![0, 1, 2]);
    assert_eq!(d.u_hat, vec![0, 0, 0]);
    assert!(d.commute());
    let s = qcycle::to_solution(&q).unwrap();
    assert!(ybe::solution::validate_braid(&s).is_empty());
    assert_eq!(qcycle::from_solution(&s).unwrap(), q);
}

#[test]
fn irretractable_affine_solution() {
    let sigma: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (y + 3 - x) % 3).collect()).collect();
    let tau: Vec<Vec<usize>> = vec![vec![0, 2, 1]; 3];
    let s = FiniteSolution::from_rows(&sigma, &tau).unwrap();
    assert!(retract::is_irretractable(&s));
    assert_eq!(retract::mpl(&s), Err(Error::NotMultipermutation { steps: 0, size: 3 }));
}
