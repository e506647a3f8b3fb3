//! The J-Möbius ladder: a ring of `N` spins with unit nearest-neighbor
//! couplings and chords of weight `J` joining `i` and `i + N/2`.

use num_traits::Zero;

use super::ProblemError;
use crate::eliminate::{reduce, EliminationOrder, ReductionLimits};
use crate::poly::{Polynomial, Rational, SpinAssignment, SpinIndex};
use crate::solve::brute_force;

fn check_n(n: usize) -> Result<(), ProblemError> {
    if n < 4 || !n.is_multiple_of(4) {
        return Err(ProblemError::InvalidSize(format!(
            "ladder size must be a positive multiple of 4, got {n}"
        )));
    }
    Ok(())
}

pub fn mobius_ladder(n: usize, j: &Rational) -> Result<Polynomial, ProblemError> {
    check_n(n)?;
    let n32 = n as SpinIndex;
    let mut h = Polynomial::over(1..=n32);
    for i in 1..=n32 {
        h = &h + &Polynomial::term(Rational::from_integer(1.into()), &[i, i % n32 + 1]);
    }
    if !j.is_zero() {
        for i in 1..=n32 / 2 {
            h = &h + &Polynomial::term(j.clone(), &[i, i + n32 / 2]);
        }
    }
    Ok(h)
}

/// Low-lying state families of the ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LadderClass {
    /// Perfect alternation around the ring.
    Alternating,
    /// Two ring domain walls with every chord antiparallel.
    TwoWall,
    Other,
}

pub fn classify(n: usize, state: &SpinAssignment) -> LadderClass {
    let n32 = n as SpinIndex;
    let v = |i: SpinIndex| state.get(i).map_or(0, |s| s.value());
    let walls = (1..=n32).filter(|&i| v(i) == v(i % n32 + 1)).count();
    let chords_anti = (1..=n32 / 2).all(|i| v(i) == -v(i + n32 / 2));
    match walls {
        0 => LadderClass::Alternating,
        2 if chords_anti => LadderClass::TwoWall,
        _ => LadderClass::Other,
    }
}

/// One grid point of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanPoint {
    pub j: Rational,
    pub min_energy: Rational,
    pub reduced_min: Rational,
    pub reduced_spins: usize,
    pub ground_states: usize,
    pub alternating: bool,
    pub two_wall: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusScan {
    pub n: usize,
    pub points: Vec<ScanPoint>,
    /// First grid point at which the two-wall family reaches the minimum.
    pub critical: Rational,
}

impl MobiusScan {
    /// `j,min_energy,reduced_min,ground_states,alternating,two_wall` CSV.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("j,min_energy,reduced_min,ground_states,alternating,two_wall\n");
        for p in &self.points {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                p.j, p.min_energy, p.reduced_min, p.ground_states, p.alternating, p.two_wall
            ));
        }
        s
    }
}

/// Elimination order used before checking the reduced minimum: every other
/// ring spin of the first half for `N = 8` (`1, 3, 6`), otherwise greedy down
/// to half the spins while staying 2-local.
pub fn default_reduction(n: usize) -> (EliminationOrder, ReductionLimits) {
    if n == 8 {
        (
            EliminationOrder::Explicit(vec![1, 3, 6]),
            ReductionLimits::default(),
        )
    } else {
        (
            EliminationOrder::Greedy { keep: n / 2 },
            ReductionLimits::default().with_locality(2),
        )
    }
}

/// Classifies the exact ground states at each `J` and locates the switch
/// from the alternating to the two-wall family.
pub fn critical_j_scan(n: usize, grid: &[Rational]) -> Result<MobiusScan, ProblemError> {
    check_n(n)?;
    if grid.is_empty() {
        return Err(ProblemError::InvalidGrid("empty grid".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ProblemError::InvalidGrid(
            "grid must be strictly ascending".into(),
        ));
    }
    let pivot = Rational::new(4.into(), (n as i64).into());
    if grid[0] >= pivot || grid[grid.len() - 1] < pivot {
        return Err(ProblemError::InvalidGrid(format!(
            "grid must contain values below 4/N = {pivot} and at or above it"
        )));
    }
    let (order, limits) = default_reduction(n);
    let mut points = Vec::with_capacity(grid.len());
    for j in grid {
        let h = mobius_ladder(n, j)?;
        let sol = brute_force(&h)?;
        let red = reduce(&h, &order, &limits);
        let reduced_min = brute_force(&red.hamiltonian)?.min_energy;
        let classes: Vec<LadderClass> = sol.ground_states.iter().map(|s| classify(n, s)).collect();
        points.push(ScanPoint {
            j: j.clone(),
            min_energy: sol.min_energy,
            reduced_min,
            reduced_spins: red.hamiltonian.num_variables(),
            ground_states: sol.ground_states.len(),
            alternating: classes.contains(&LadderClass::Alternating),
            two_wall: classes.contains(&LadderClass::TwoWall),
        });
    }
    let critical = points
        .iter()
        .find(|p| p.two_wall)
        .map(|p| p.j.clone())
        .ok_or_else(|| ProblemError::InvalidGrid("no switch to the two-wall family".into()))?;
    Ok(MobiusScan {
        n,
        points,
        critical,
    })
}
