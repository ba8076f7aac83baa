//! Grid cross-validation of the evaluation routes.
//!
//! Every triple in the grid is evaluated by each selected method that applies
//! to it; invalid triples are included and must come out 0 everywhere. The
//! named identity suites run alongside. Failures are collected into the
//! report, never raised.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::closed_form::tev_closed;
use crate::coefficients::{d_closed_axis, expand, Expansion};
use crate::error::{Error, Result};
use crate::lattice_paths::{
    count_paths_by_index, d_histogram, enumerate_paths, path_stats, weighted_e_sum,
    ENUMERATION_LIMIT,
};
use crate::primitives::{catalan, e_entry, genus_floor, BigCount, TevParams};
use crate::recursion::{tev_recursive, MemoTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursion,
    Closed,
    Paths,
    Expansion,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Recursion,
        Method::Closed,
        Method::Paths,
        Method::Expansion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Recursion => "recursion",
            Method::Closed => "closed",
            Method::Paths => "paths",
            Method::Expansion => "expansion",
        }
    }

    /// Path-based methods only exist for `ℓ ≤ 0`; enumeration is further
    /// limited by [`ENUMERATION_LIMIT`].
    pub fn applies_to(self, p: &TevParams) -> bool {
        match self {
            Method::Recursion | Method::Closed => true,
            Method::Paths => p.ell <= 0 && -p.ell + p.r <= ENUMERATION_LIMIT,
            Method::Expansion => p.ell <= 0,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub g_max: i64,
    pub ell_min: i64,
    pub ell_max: i64,
    pub r_max: i64,
    pub methods: BTreeSet<Method>,
}

impl GridSpec {
    /// A grid using all four methods.
    pub fn new(g_max: i64, ell_min: i64, ell_max: i64, r_max: i64) -> Self {
        GridSpec {
            g_max,
            ell_min,
            ell_max,
            r_max,
            methods: Method::ALL.into_iter().collect(),
        }
    }

    pub fn with_methods(mut self, methods: impl IntoIterator<Item = Method>) -> Self {
        self.methods = methods.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.g_max < 0 {
            return Err(Error::InvalidGrid(format!("g_max = {} < 0", self.g_max)));
        }
        if self.ell_min > self.ell_max {
            return Err(Error::InvalidGrid(format!(
                "ell_min = {} > ell_max = {}",
                self.ell_min, self.ell_max
            )));
        }
        if self.r_max < 1 {
            return Err(Error::InvalidGrid(format!("r_max = {} < 1", self.r_max)));
        }
        if self.methods.len() < 2 {
            return Err(Error::InvalidGrid(
                "at least two methods must be selected".into(),
            ));
        }
        Ok(())
    }

    /// Every triple of the grid, sorted by `(g, ℓ, r)`.
    pub fn cells(&self) -> Vec<TevParams> {
        let mut out = Vec::new();
        for g in 0..=self.g_max {
            for ell in self.ell_min..=self.ell_max {
                for r in 1..=self.r_max {
                    out.push(TevParams { g, ell, r });
                }
            }
        }
        out
    }
}

/// All method values for one grid cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellValues {
    pub params: TevParams,
    pub values: BTreeMap<Method, BigCount>,
}

impl CellValues {
    pub fn agree(&self) -> bool {
        let mut it = self.values.values();
        match it.next() {
            Some(first) => it.all(|v| v == first),
            None => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub g: i64,
    pub ell: i64,
    pub r: i64,
    pub values: BTreeMap<Method, BigCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub name: String,
    pub witness: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    #[serde(with = "decimal_string")]
    pub cells_checked: u64,
    pub mismatches: Vec<Mismatch>,
    pub identity_failures: Vec<IdentityFailure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.identity_failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

mod decimal_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Per-(ℓ, r) data shared by all genera: the path histogram and the closed
/// expansion.
struct Column {
    floor: i64,
    histogram: Option<BTreeMap<usize, u64>>,
    expansion: Option<Expansion>,
}

/// Evaluates every cell of the grid under every applicable selected method.
/// The result is sorted by `(g, ℓ, r)`.
pub fn evaluate_cells(spec: &GridSpec) -> Result<Vec<CellValues>> {
    spec.validate()?;
    let wants = |m: Method| spec.methods.contains(&m);

    let mut keys = Vec::new();
    if wants(Method::Paths) || wants(Method::Expansion) {
        for ell in spec.ell_min..=spec.ell_max.min(0) {
            for r in 1..=spec.r_max {
                keys.push((ell, r));
            }
        }
    }
    let columns: HashMap<(i64, i64), Column> = keys
        .into_par_iter()
        .map(|(ell, r)| {
            let probe = TevParams { g: 0, ell, r };
            let histogram = if wants(Method::Paths) && Method::Paths.applies_to(&probe) {
                Some(count_paths_by_index(ell, r)?)
            } else {
                None
            };
            let expansion = if wants(Method::Expansion) {
                Some(expand(ell, r)?)
            } else {
                None
            };
            let col = Column {
                floor: genus_floor(ell, r),
                histogram,
                expansion,
            };
            Ok(((ell, r), col))
        })
        .collect::<Result<_>>()?;

    let memo = MemoTable::new();
    spec.cells()
        .into_par_iter()
        .map(|p| {
            let mut values = BTreeMap::new();
            for &m in &spec.methods {
                if !m.applies_to(&p) {
                    continue;
                }
                let value = match m {
                    Method::Recursion => tev_recursive(p, &memo)?,
                    Method::Closed => tev_closed(p)?,
                    // j < 0 below the genus floor: E_s[j] = 0 gives the zero
                    // without consulting the validity predicate.
                    Method::Paths => {
                        let col = &columns[&(p.ell, p.r)];
                        match &col.histogram {
                            Some(h) => weighted_e_sum(h, p.g - col.floor)?,
                            None => continue,
                        }
                    }
                    Method::Expansion => {
                        let col = &columns[&(p.ell, p.r)];
                        match &col.expansion {
                            Some(e) => e.evaluate(p.g - col.floor)?,
                            None => continue,
                        }
                    }
                };
                values.insert(m, value);
            }
            Ok(CellValues { params: p, values })
        })
        .collect()
}

/// Runs the grid sweep and all identity suites.
pub fn cross_check(spec: &GridSpec) -> Result<CheckReport> {
    cross_check_with(spec, |_, _, v| v)
}

/// As [`cross_check`], but every method value passes through `perturb`
/// before comparison. Used to confirm that the harness notices faults.
pub fn cross_check_with<F>(spec: &GridSpec, perturb: F) -> Result<CheckReport>
where
    F: Fn(Method, &TevParams, BigCount) -> BigCount,
{
    let cells = evaluate_cells(spec)?;
    let cells_checked = cells.len() as u64;
    let mut mismatches = Vec::new();
    for cell in cells {
        let p = cell.params;
        let cell = CellValues {
            params: p,
            values: cell
                .values
                .into_iter()
                .map(|(m, v)| (m, perturb(m, &p, v)))
                .collect(),
        };
        if !cell.agree() {
            mismatches.push(Mismatch {
                g: p.g,
                ell: p.ell,
                r: p.r,
                values: cell.values,
            });
        }
    }

    let mut identity_failures = Vec::new();
    identity_failures.extend(e_vector_identities(
        (spec.r_max - spec.ell_min.min(0) + 1).max(2),
        spec.g_max,
    ));
    identity_failures.extend(catalan_identity(spec)?);
    identity_failures.extend(full_fiber_identity(spec)?);
    let bound = (-spec.ell_min).clamp(1, 4);
    identity_failures.extend(axis_meeting_identities(bound, bound, 6));
    identity_failures.extend(index_identities(
        spec.ell_min.max(-7),
        spec.ell_max.min(0),
        spec.r_max.min(7),
    )?);

    Ok(CheckReport {
        cells_checked,
        mismatches,
        identity_failures,
    })
}

fn failure(name: &str, witness: serde_json::Value) -> IdentityFailure {
    IdentityFailure {
        name: name.to_string(),
        witness,
    }
}

/// Pascal law `E_{s+1}[j+1] = E_{s+1}[j] + E_s[j+1]` for `1 ≤ s ≤ s_max`,
/// `−1 ≤ j ≤ j_max`, and `E_s[0] = 1`.
pub fn e_vector_identities(s_max: i64, j_max: i64) -> Vec<IdentityFailure> {
    let mut out = Vec::new();
    for s in 1..=s_max {
        if e_entry(s, 0).ok() != Some(BigCount::one()) {
            out.push(failure("e_leading_entry", json!({ "s": s })));
        }
        for j in -1..=j_max {
            let lhs = e_entry(s + 1, j + 1);
            let rhs = e_entry(s + 1, j).and_then(|a| Ok(a + e_entry(s, j + 1)?));
            if lhs.is_err() || lhs != rhs {
                out.push(failure("e_pascal_law", json!({ "s": s, "j": j })));
            }
        }
    }
    out
}

/// `Tev_{2m,−m,1} = C_m = |P(−m, 1)|` wherever the grid reaches.
fn catalan_identity(spec: &GridSpec) -> Result<Vec<IdentityFailure>> {
    let mut out = Vec::new();
    let m_max = (-spec.ell_min)
        .min(spec.g_max / 2)
        .min(ENUMERATION_LIMIT - 1);
    for m in 1..=m_max {
        let closed = tev_closed(TevParams {
            g: 2 * m,
            ell: -m,
            r: 1,
        })?;
        let cat = catalan(m)?;
        let paths = enumerate_paths(-m, 1)?.len() as u64;
        if closed != cat || cat != paths {
            out.push(failure("catalan", json!({ "m": m })));
        }
    }
    Ok(out)
}

/// `Tev_{g,ℓ,g+1+ℓ} = 1` for valid `ℓ ≥ 0`.
fn full_fiber_identity(spec: &GridSpec) -> Result<Vec<IdentityFailure>> {
    let mut out = Vec::new();
    let memo = MemoTable::new();
    for ell in spec.ell_min.max(0)..=spec.ell_max {
        for g in 0..=spec.g_max {
            let p = TevParams {
                g,
                ell,
                r: g + 1 + ell,
            };
            if !p.is_valid() {
                continue;
            }
            if tev_closed(p)? != 1u64 || tev_recursive(p, &memo)? != 1u64 {
                out.push(failure("full_fiber", json!({ "g": g, "ell": ell })));
            }
        }
    }
    Ok(out)
}

/// Brute-force checks of the axis-meeting identities:
///
/// * (i) translation `d(k; u+j, v, u′+j, v′) = d(k; u, v, u′, v′)`,
/// * (ii) U/D swap `d(k; 0, 1, u′, v′) = d(k; 0, v′, u′−v′+1, 1)`,
/// * (iii) lift `d(k; u, v, u′, v′) = d(k−t; u, v+t, u′, v′)`, `1 ≤ t < k`,
/// * (iv) `d(k; 0, 1, u′, 1)` equals its closed form.
///
/// Ranges: `−u_bound ≤ u, u′ ≤ 0`, `1 ≤ v, v′ ≤ v_bound`, `0 ≤ k ≤ k_max`;
/// (iv) uses `−(u_bound + 2) ≤ u′ ≤ −1`, `2 ≤ k ≤ −u′ + 1`.
pub fn axis_meeting_identities(u_bound: i64, v_bound: i64, k_max: i64) -> Vec<IdentityFailure> {
    let mut cache: HashMap<(i64, i64, i64, i64), Vec<u64>> = HashMap::new();
    let mut d = |k: i64, u: i64, v: i64, u2: i64, v2: i64| -> u64 {
        if k < 0 {
            return 0;
        }
        let hist = cache
            .entry((u, v, u2, v2))
            .or_insert_with(|| d_histogram(u, v, u2, v2));
        hist.get(k as usize).copied().unwrap_or(0)
    };

    let mut out = Vec::new();
    for k in 0..=k_max {
        for u in -u_bound..=0 {
            for v in 1..=v_bound {
                for u2 in -u_bound..=u {
                    for v2 in 1..=v_bound {
                        let base = d(k, u, v, u2, v2);
                        for j in -u_bound..=-u {
                            if d(k, u + j, v, u2 + j, v2) != base {
                                out.push(failure(
                                    "axis_translation",
                                    json!({ "k": k, "u": u, "v": v, "u2": u2, "v2": v2, "j": j }),
                                ));
                            }
                        }
                        if u == 0 && v == 1 && u2 < v2 && d(k, 0, v2, u2 - v2 + 1, 1) != base {
                            out.push(failure("axis_swap", json!({ "k": k, "u2": u2, "v2": v2 })));
                        }
                        for t in 1..k {
                            if d(k - t, u, v + t, u2, v2) != base {
                                out.push(failure(
                                    "axis_lift",
                                    json!({ "k": k, "u": u, "v": v, "u2": u2, "v2": v2, "t": t }),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    for u2 in -(u_bound + 2)..=-1 {
        for k in 2..=-u2 + 1 {
            let brute = d(k, 0, 1, u2, 1);
            match d_closed_axis(k, u2) {
                Ok(c) if c == brute => {}
                _ => out.push(failure("axis_closed_form", json!({ "k": k, "u2": u2 }))),
            }
        }
    }
    out
}

/// Index bounds and the decomposition `Ind = returns + |γ ∩ {ℓ = 0}|` over
/// every path of `P(ℓ, r)` in the given ranges.
pub fn index_identities(ell_min: i64, ell_max: i64, r_max: i64) -> Result<Vec<IdentityFailure>> {
    let mut out = Vec::new();
    for ell in ell_min..=ell_max {
        for r in 1..=r_max {
            for path in enumerate_paths(ell, r)? {
                let st = path_stats(&path);
                let index = st.index as i64;
                let witness = || json!({ "ell": ell, "r": r, "path": path.to_string() });
                if index < 1 || index > r - ell + 1 || (ell < 0 && index < 3) {
                    out.push(failure("index_bounds", witness()));
                }
                if st.index != st.returns + path.points_on_vertical_axis() {
                    out.push(failure("index_decomposition", witness()));
                }
            }
        }
    }
    Ok(out)
}
