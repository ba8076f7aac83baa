//! Lattice paths in the quadrant `𝒜 = {(ℓ, r) : ℓ ≤ 0, r ≥ 1}` with steps
//! `U = (0, 1)` and `D = (−1, −1)`.
//!
//! Everything here is explicit enumeration. The module is the brute-force
//! oracle for [`crate::coefficients`], so it deliberately avoids any closed
//! formula for path counts.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::primitives::{e_entry, genus_floor, BigCount, TevParams};

/// Largest `|ℓ| + r` accepted by the exhaustive enumerators.
pub const ENUMERATION_LIMIT: i64 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// `(0, +1)`
    U,
    /// `(−1, −1)`
    D,
}

impl Step {
    fn apply(self, p: Point) -> Point {
        match self {
            Step::U => Point {
                ell: p.ell,
                r: p.r + 1,
            },
            Step::D => Point {
                ell: p.ell - 1,
                r: p.r - 1,
            },
        }
    }
}

/// A lattice point `(ℓ, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub ell: i64,
    pub r: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { ell: 0, r: 1 };

    pub fn in_quadrant(self) -> bool {
        self.ell <= 0 && self.r >= 1
    }

    pub fn on_boundary(self) -> bool {
        self.ell == 0 || self.r == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub start: Point,
    pub steps: Vec<Step>,
}

impl LatticePath {
    /// Builds a path, rejecting any that leaves `𝒜`.
    pub fn new(start: Point, steps: Vec<Step>) -> Option<Self> {
        let path = LatticePath { start, steps };
        let inside = path.points().all(Point::in_quadrant);
        inside.then_some(path)
    }

    /// Visited points in order, start included, repeats kept.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().scan(self.start, |pos, &s| {
            *pos = s.apply(*pos);
            Some(*pos)
        }))
    }

    pub fn end(&self) -> Point {
        self.points().last().unwrap_or(self.start)
    }

    /// Number of visited points on the line `ℓ = 0`.
    pub fn points_on_vertical_axis(&self) -> usize {
        self.points().filter(|p| p.ell == 0).count()
    }

    /// Number of visited points on the line `r = 1`.
    pub fn points_on_horizontal_axis(&self) -> usize {
        self.points().filter(|p| p.r == 1).count()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::U => "U",
                Step::D => "D",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathStats {
    /// Visited points on `∂𝒜`; a point on both lines counts once.
    pub index: usize,
    /// `D` steps ending on `r = 1`.
    pub returns: usize,
}

pub fn path_stats(path: &LatticePath) -> PathStats {
    let index = path.points().filter(|p| p.on_boundary()).count();
    let returns = path
        .steps
        .iter()
        .zip(path.points().skip(1))
        .filter(|(s, p)| **s == Step::D && p.r == 1)
        .count();
    PathStats { index, returns }
}

fn check_target(ell: i64, r: i64) -> Result<()> {
    if ell > 0 {
        return Err(Error::PositiveEll(ell));
    }
    if r < 1 {
        return Err(Error::NonPositiveR(r));
    }
    let size = -ell + r;
    if size > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard {
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// All paths from `(0, 1)` to `(ell, r)` inside `𝒜`, in lexicographic step
/// order with `U < D`.
pub fn enumerate_paths(ell: i64, r: i64) -> Result<Vec<LatticePath>> {
    check_target(ell, r)?;
    let downs = (-ell) as usize;
    let ups = (-ell + r - 1) as usize;
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(ups + downs);
    walk(Point::ORIGIN, ups, downs, &mut steps, &mut |steps| {
        out.push(LatticePath {
            start: Point::ORIGIN,
            steps: steps.to_vec(),
        })
    });
    Ok(out)
}

/// Depth-first walk over all interleavings of `ups` U-steps and `downs`
/// D-steps that keep `r ≥ 1`. Moving left only, the `ℓ ≤ 0` constraint is
/// satisfied whenever the start satisfies it.
fn walk(
    pos: Point,
    ups: usize,
    downs: usize,
    steps: &mut Vec<Step>,
    visit: &mut impl FnMut(&[Step]),
) {
    if ups == 0 && downs == 0 {
        visit(steps);
        return;
    }
    if ups > 0 {
        steps.push(Step::U);
        walk(Step::U.apply(pos), ups - 1, downs, steps, visit);
        steps.pop();
    }
    if downs > 0 && pos.r > 1 {
        steps.push(Step::D);
        walk(Step::D.apply(pos), ups, downs - 1, steps, visit);
        steps.pop();
    }
}

/// Histogram `index ↦ number of paths` over `P(ell, r)`.
pub fn count_paths_by_index(ell: i64, r: i64) -> Result<BTreeMap<usize, u64>> {
    let mut hist = BTreeMap::new();
    for path in enumerate_paths(ell, r)? {
        *hist.entry(path_stats(&path).index).or_insert(0) += 1;
    }
    Ok(hist)
}

/// `Σ_s hist[s] · E_s[j]`, with `E_s[j] = 0` for `j < 0`.
pub(crate) fn weighted_e_sum(hist: &BTreeMap<usize, u64>, j: i64) -> Result<BigCount> {
    let mut total = BigCount::zero();
    for (&s, &count) in hist {
        total += &(&BigCount::from(count) * &e_entry(s as i64, j)?);
    }
    Ok(total)
}

/// `Tev_{g,ℓ,r} = Σ_{γ ∈ P(ℓ,r)} E_{Ind(γ)}[g − g_floor]` for `ℓ ≤ 0`.
pub fn tev_via_paths(p: TevParams) -> Result<BigCount> {
    p.check()?;
    let floor = genus_floor(p.ell, p.r);
    check_target(p.ell, p.r)?;
    if p.g < floor {
        return Err(Error::BelowGenusFloor { g: p.g, floor });
    }
    let hist = count_paths_by_index(p.ell, p.r)?;
    weighted_e_sum(&hist, p.g - floor)
}

/// Counts of U/D paths in `𝒜` from `(u, v)` to `(u2, v2)`, bucketed by the
/// number of visited points on `r = 1` (endpoints included). Entry `k` of the
/// result is `d(k; u, v, u2, v2)`.
pub fn d_histogram(u: i64, v: i64, u2: i64, v2: i64) -> Vec<u64> {
    let start = Point { ell: u, r: v };
    let end = Point { ell: u2, r: v2 };
    if !start.in_quadrant() || !end.in_quadrant() || u2 > u {
        return Vec::new();
    }
    let downs = u - u2;
    let ups = v2 - v + downs;
    if ups < 0 {
        return Vec::new();
    }
    let mut hist = Vec::new();
    axis_walk(
        start,
        ups as usize,
        downs as usize,
        usize::from(v == 1),
        &mut hist,
    );
    hist
}

fn axis_walk(pos: Point, ups: usize, downs: usize, hits: usize, hist: &mut Vec<u64>) {
    if ups == 0 && downs == 0 {
        if hist.len() <= hits {
            hist.resize(hits + 1, 0);
        }
        hist[hits] += 1;
        return;
    }
    if ups > 0 {
        axis_walk(Step::U.apply(pos), ups - 1, downs, hits, hist);
    }
    if downs > 0 && pos.r > 1 {
        let next = Step::D.apply(pos);
        axis_walk(next, ups, downs - 1, hits + usize::from(next.r == 1), hist);
    }
}

/// `d(k; u, v, u2, v2)`: the number of paths in `𝒜` from `(u, v)` to
/// `(u2, v2)` meeting `r = 1` exactly `k` times. Zero when unreachable.
pub fn d_count(k: i64, u: i64, v: i64, u2: i64, v2: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    d_histogram(u, v, u2, v2)
        .get(k as usize)
        .copied()
        .unwrap_or(0)
}
