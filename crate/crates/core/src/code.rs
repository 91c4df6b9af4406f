//! Parity-check codes, their Tanner graph, and the conventional static grouping.
//!
//! A [`ParityCheckCode`] keeps both adjacency views (`𝒩(m)` per check and
//! `ℳ(n)` per variable) and a flattened edge index used by the decoder. Edges
//! are numbered check-major: the edges of check `m` occupy
//! `check_edge_start[m]..check_edge_start[m + 1]` in the order of `𝒩(m)`.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid code: {0}")]
    Invalid(Violation),
    #[error("base matrix row {row} has {found} entries, expected {expected}")]
    NonRectangular {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("shift {shift} at base entry ({row}, {col}) is outside [0, {z})")]
    ShiftOutOfRange {
        row: usize,
        col: usize,
        shift: i64,
        z: usize,
    },
    #[error("lifting size must be at least 1")]
    ZeroLifting,
    #[error("group count {g} invalid for {n} variable nodes")]
    GroupCount { g: usize, n: usize },
}

/// A single broken invariant found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    CheckIndexOutOfRange {
        var: usize,
        check: usize,
    },
    VarIndexOutOfRange {
        check: usize,
        var: usize,
    },
    DuplicateInCheck {
        check: usize,
        var: usize,
    },
    DuplicateInVar {
        var: usize,
        check: usize,
    },
    /// `n ∈ 𝒩(m)` without `m ∈ ℳ(n)`, or the reverse.
    Asymmetric {
        check: usize,
        var: usize,
    },
    EdgeCount {
        check_sum: usize,
        var_sum: usize,
    },
    Dimensions {
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CheckIndexOutOfRange { var, check } => {
                write!(f, "variable {var} lists out-of-range check {check}")
            }
            Violation::VarIndexOutOfRange { check, var } => {
                write!(f, "check {check} lists out-of-range variable {var}")
            }
            Violation::DuplicateInCheck { check, var } => {
                write!(f, "check {check} lists variable {var} more than once")
            }
            Violation::DuplicateInVar { var, check } => {
                write!(f, "variable {var} lists check {check} more than once")
            }
            Violation::Asymmetric { check, var } => {
                write!(
                    f,
                    "adjacency between check {check} and variable {var} is one-sided"
                )
            }
            Violation::EdgeCount { check_sum, var_sum } => write!(
                f,
                "check degrees sum to {check_sum} but variable degrees sum to {var_sum}"
            ),
            Violation::Dimensions { expected, found } => {
                write!(f, "expected {expected} adjacency lists, found {found}")
            }
        }
    }
}

/// Checks every structural invariant of a pair of adjacency views.
///
/// Violations are returned as data; an empty list means the views describe a
/// consistent bipartite graph.
pub fn validate(n_vars: usize, check_adj: &[Vec<usize>], var_adj: &[Vec<usize>]) -> Vec<Violation> {
    let mut out = Vec::new();
    let n_checks = check_adj.len();
    if var_adj.len() != n_vars {
        out.push(Violation::Dimensions {
            expected: n_vars,
            found: var_adj.len(),
        });
        return out;
    }

    for (m, vars) in check_adj.iter().enumerate() {
        let mut seen = std::collections::HashSet::with_capacity(vars.len());
        for &n in vars {
            if n >= n_vars {
                out.push(Violation::VarIndexOutOfRange { check: m, var: n });
            } else if !seen.insert(n) {
                out.push(Violation::DuplicateInCheck { check: m, var: n });
            } else if !var_adj[n].contains(&m) {
                out.push(Violation::Asymmetric { check: m, var: n });
            }
        }
    }
    for (n, checks) in var_adj.iter().enumerate() {
        let mut seen = std::collections::HashSet::with_capacity(checks.len());
        for &m in checks {
            if m >= n_checks {
                out.push(Violation::CheckIndexOutOfRange { var: n, check: m });
            } else if !seen.insert(m) {
                out.push(Violation::DuplicateInVar { var: n, check: m });
            } else if !check_adj[m].contains(&n) {
                out.push(Violation::Asymmetric { check: m, var: n });
            }
        }
    }

    let check_sum: usize = check_adj.iter().map(Vec::len).sum();
    let var_sum: usize = var_adj.iter().map(Vec::len).sum();
    if check_sum != var_sum {
        out.push(Violation::EdgeCount { check_sum, var_sum });
    }
    out
}

/// Binary LDPC code given by a sparse `M × N` parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckCode {
    n_vars: usize,
    check_adj: Vec<Vec<usize>>,
    var_adj: Vec<Vec<usize>>,
    max_var_deg: usize,

    check_edge_start: Vec<usize>,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
    var_edge_start: Vec<usize>,
    var_edges: Vec<usize>,
}

impl ParityCheckCode {
    /// Builds a code from both adjacency views, rejecting inconsistent input.
    pub fn from_adjacency(
        n_vars: usize,
        check_adj: Vec<Vec<usize>>,
        var_adj: Vec<Vec<usize>>,
    ) -> Result<Self, CodeError> {
        if let Some(v) = validate(n_vars, &check_adj, &var_adj).into_iter().next() {
            return Err(CodeError::Invalid(v));
        }
        Ok(Self::build(n_vars, check_adj, var_adj))
    }

    /// Builds a code from the check-side lists only; `ℳ(n)` is derived in
    /// increasing check order.
    pub fn from_checks(n_vars: usize, check_adj: Vec<Vec<usize>>) -> Result<Self, CodeError> {
        let mut var_adj = vec![Vec::new(); n_vars];
        for (m, vars) in check_adj.iter().enumerate() {
            for &n in vars {
                if n >= n_vars {
                    return Err(CodeError::Invalid(Violation::VarIndexOutOfRange {
                        check: m,
                        var: n,
                    }));
                }
                var_adj[n].push(m);
            }
        }
        Self::from_adjacency(n_vars, check_adj, var_adj)
    }

    fn build(n_vars: usize, check_adj: Vec<Vec<usize>>, var_adj: Vec<Vec<usize>>) -> Self {
        let n_checks = check_adj.len();
        let mut check_edge_start = Vec::with_capacity(n_checks + 1);
        let mut edge_var = Vec::new();
        let mut edge_check = Vec::new();
        check_edge_start.push(0);
        for (m, vars) in check_adj.iter().enumerate() {
            for &n in vars {
                edge_var.push(n);
                edge_check.push(m);
            }
            check_edge_start.push(edge_var.len());
        }

        let mut var_edge_start = Vec::with_capacity(n_vars + 1);
        let mut var_edges = Vec::with_capacity(edge_var.len());
        var_edge_start.push(0);
        for (n, checks) in var_adj.iter().enumerate() {
            for &m in checks {
                let range = check_edge_start[m]..check_edge_start[m + 1];
                let e = range
                    .clone()
                    .find(|&e| edge_var[e] == n)
                    .expect("validated adjacency is symmetric");
                var_edges.push(e);
            }
            var_edge_start.push(var_edges.len());
        }

        let max_var_deg = var_adj.iter().map(Vec::len).max().unwrap_or(0);
        Self {
            n_vars,
            check_adj,
            var_adj,
            max_var_deg,
            check_edge_start,
            edge_var,
            edge_check,
            var_edge_start,
            var_edges,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_checks(&self) -> usize {
        self.check_adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Information length under the full-rank assumption, `N − M`.
    pub fn dimension(&self) -> usize {
        self.n_vars.saturating_sub(self.n_checks())
    }

    /// Design rate `(N − M) / N`.
    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.n_vars as f64
    }

    /// `𝒩(m)`.
    pub fn check_vars(&self, m: usize) -> &[usize] {
        &self.check_adj[m]
    }

    /// `ℳ(n)`.
    pub fn var_checks(&self, n: usize) -> &[usize] {
        &self.var_adj[n]
    }

    pub fn check_deg(&self, m: usize) -> usize {
        self.check_adj[m].len()
    }

    pub fn var_deg(&self, n: usize) -> usize {
        self.var_adj[n].len()
    }

    pub fn max_var_deg(&self) -> usize {
        self.max_var_deg
    }

    pub fn max_check_deg(&self) -> usize {
        self.check_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_var_regular(&self) -> bool {
        self.var_adj.iter().all(|c| c.len() == self.max_var_deg)
    }

    /// Edge ids of check `m`, aligned with [`check_vars`](Self::check_vars).
    #[inline]
    pub fn check_edges(&self, m: usize) -> std::ops::Range<usize> {
        self.check_edge_start[m]..self.check_edge_start[m + 1]
    }

    /// Edge ids of variable `n`, aligned with [`var_checks`](Self::var_checks).
    #[inline]
    pub fn var_edges(&self, n: usize) -> &[usize] {
        &self.var_edges[self.var_edge_start[n]..self.var_edge_start[n + 1]]
    }

    #[inline]
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    #[inline]
    pub fn edge_check(&self, e: usize) -> usize {
        self.edge_check[e]
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self.n_vars, &self.check_adj, &self.var_adj)
    }

    /// `s = û·Hᵀ mod 2`.
    pub fn syndrome(&self, hard: &[u8]) -> Vec<u8> {
        assert_eq!(hard.len(), self.n_vars, "hard-decision length mismatch");
        self.check_adj
            .iter()
            .map(|vars| vars.iter().fold(0u8, |acc, &n| acc ^ (hard[n] & 1)))
            .collect()
    }

    pub fn is_codeword(&self, hard: &[u8]) -> bool {
        self.syndrome(hard).iter().all(|&s| s == 0)
    }

    /// Parses the MacKay alist format.
    ///
    /// Indices are 1-based in the file and stored 0-based; zero entries are
    /// padding and dropped. Lines that are empty are ignored.
    pub fn parse_alist(text: &str) -> Result<Self, CodeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let mut next_line = |what: &str| -> Result<(usize, Vec<usize>), CodeError> {
            let (line, content) = lines.next().ok_or_else(|| CodeError::Parse {
                line: 0,
                msg: format!("unexpected end of input while reading {what}"),
            })?;
            let nums = content
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| CodeError::Parse {
                        line,
                        msg: format!("invalid integer {t:?} in {what}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((line, nums))
        };

        let (line, header) = next_line("header")?;
        let [n_vars, n_checks] = header[..] else {
            return Err(CodeError::Parse {
                line,
                msg: format!("header must be `N M`, found {} values", header.len()),
            });
        };
        if n_vars == 0 || n_checks == 0 {
            return Err(CodeError::Parse {
                line,
                msg: "N and M must be positive".into(),
            });
        }
        let (line, maxes) = next_line("maximum degrees")?;
        if maxes.len() != 2 {
            return Err(CodeError::Parse {
                line,
                msg: "expected two maximum degrees".into(),
            });
        }

        // Degree lists may wrap over several lines in some files.
        let mut read_list = |len: usize, what: &str| -> Result<(usize, Vec<usize>), CodeError> {
            let (first, mut vals) = next_line(what)?;
            while vals.len() < len {
                let (_, more) = next_line(what)?;
                vals.extend(more);
            }
            if vals.len() != len {
                return Err(CodeError::Parse {
                    line: first,
                    msg: format!("{what}: expected {len} values, found {}", vals.len()),
                });
            }
            Ok((first, vals))
        };
        let (col_line, col_deg) = read_list(n_vars, "column degrees")?;
        let (row_line, row_deg) = read_list(n_checks, "row degrees")?;
        if col_deg.iter().max() != Some(&maxes[0]) {
            return Err(CodeError::Parse {
                line: col_line,
                msg: format!("column degrees disagree with maximum {}", maxes[0]),
            });
        }
        if row_deg.iter().max() != Some(&maxes[1]) {
            return Err(CodeError::Parse {
                line: row_line,
                msg: format!("row degrees disagree with maximum {}", maxes[1]),
            });
        }

        let mut var_adj = Vec::with_capacity(n_vars);
        let mut var_lines = Vec::with_capacity(n_vars);
        for (n, &deg) in col_deg.iter().enumerate() {
            let (line, vals) = next_line("column adjacency")?;
            let list = one_based(line, &vals, n_checks, deg, "column", n)?;
            var_adj.push(list);
            var_lines.push(line);
        }
        let mut check_adj = Vec::with_capacity(n_checks);
        let mut check_lines = Vec::with_capacity(n_checks);
        for (m, &deg) in row_deg.iter().enumerate() {
            let (line, vals) = next_line("row adjacency")?;
            let list = one_based(line, &vals, n_vars, deg, "row", m)?;
            check_adj.push(list);
            check_lines.push(line);
        }

        if let Some(v) = validate(n_vars, &check_adj, &var_adj).into_iter().next() {
            let line = match v {
                Violation::Asymmetric { check, .. } => check_lines[check],
                Violation::DuplicateInCheck { check, .. } => check_lines[check],
                Violation::DuplicateInVar { var, .. } => var_lines[var],
                _ => 0,
            };
            return Err(CodeError::Parse {
                line,
                msg: v.to_string(),
            });
        }
        Ok(Self::build(n_vars, check_adj, var_adj))
    }

    /// Serializes to alist with zero padding up to the maximum degrees.
    pub fn to_alist(&self) -> String {
        let mut s = String::new();
        let max_c = self.max_check_deg();
        let join = |it: &mut dyn Iterator<Item = usize>| {
            it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(s, "{} {}", self.n_vars, self.n_checks());
        let _ = writeln!(s, "{} {}", self.max_var_deg, max_c);
        let _ = writeln!(s, "{}", join(&mut self.var_adj.iter().map(Vec::len)));
        let _ = writeln!(s, "{}", join(&mut self.check_adj.iter().map(Vec::len)));
        for checks in &self.var_adj {
            let mut row: Vec<usize> = checks.iter().map(|m| m + 1).collect();
            row.resize(self.max_var_deg, 0);
            let _ = writeln!(s, "{}", join(&mut row.into_iter()));
        }
        for vars in &self.check_adj {
            let mut row: Vec<usize> = vars.iter().map(|n| n + 1).collect();
            row.resize(max_c, 0);
            let _ = writeln!(s, "{}", join(&mut row.into_iter()));
        }
        s
    }

    /// Lifts a quasi-cyclic base matrix. Entry `-1` is the all-zero block and
    /// `s ∈ [0, z)` the identity cyclically shifted right by `s`, so block
    /// `(i, j)` contributes the edges `(i·z + k, j·z + (k + s) mod z)`.
    pub fn expand_qc(base: &[Vec<i64>], z: usize) -> Result<Self, CodeError> {
        if z == 0 {
            return Err(CodeError::ZeroLifting);
        }
        let cols = base.first().map_or(0, Vec::len);
        for (i, row) in base.iter().enumerate() {
            if row.len() != cols {
                return Err(CodeError::NonRectangular {
                    row: i,
                    found: row.len(),
                    expected: cols,
                });
            }
            for (j, &s) in row.iter().enumerate() {
                if s < -1 || s >= z as i64 {
                    return Err(CodeError::ShiftOutOfRange {
                        row: i,
                        col: j,
                        shift: s,
                        z,
                    });
                }
            }
        }

        let mut check_adj = Vec::with_capacity(base.len() * z);
        for row in base {
            for k in 0..z {
                let vars = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s >= 0)
                    .map(|(j, &s)| j * z + (k + s as usize) % z)
                    .collect();
                check_adj.push(vars);
            }
        }
        Self::from_checks(cols * z, check_adj)
    }
}

fn one_based(
    line: usize,
    vals: &[usize],
    bound: usize,
    deg: usize,
    what: &str,
    idx: usize,
) -> Result<Vec<usize>, CodeError> {
    let list: Vec<usize> = vals.iter().copied().filter(|&v| v != 0).collect();
    if let Some(&bad) = list.iter().find(|&&v| v > bound) {
        return Err(CodeError::Parse {
            line,
            msg: format!("{what} {idx}: index {bad} exceeds {bound}"),
        });
    }
    if list.len() != deg {
        return Err(CodeError::Parse {
            line,
            msg: format!("{what} {idx}: degree {} but {} entries", deg, list.len()),
        });
    }
    Ok(list.into_iter().map(|v| v - 1).collect())
}

/// Parses a QC base-matrix file: a `M_b N_b Z` header followed by `M_b` rows
/// of `N_b` shifts.
pub fn parse_qc_base(text: &str) -> Result<(Vec<Vec<i64>>, usize), CodeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_row = |line: usize, l: &str| -> Result<Vec<i64>, CodeError> {
        l.split_whitespace()
            .map(|t| {
                t.parse::<i64>().map_err(|_| CodeError::Parse {
                    line,
                    msg: format!("invalid integer {t:?}"),
                })
            })
            .collect()
    };
    let (line, header) = lines.next().ok_or(CodeError::Parse {
        line: 0,
        msg: "empty base-matrix file".into(),
    })?;
    let header = parse_row(line, header)?;
    let [mb, nb, z] = header[..] else {
        return Err(CodeError::Parse {
            line,
            msg: "header must be `M_b N_b Z`".into(),
        });
    };
    if mb <= 0 || nb <= 0 || z <= 0 {
        return Err(CodeError::Parse {
            line,
            msg: "header values must be positive".into(),
        });
    }
    let mut base = Vec::with_capacity(mb as usize);
    for i in 0..mb as usize {
        let (line, l) = lines.next().ok_or(CodeError::Parse {
            line,
            msg: format!("expected {mb} rows, found {i}"),
        })?;
        let row = parse_row(line, l)?;
        if row.len() != nb as usize {
            return Err(CodeError::Parse {
                line,
                msg: format!("expected {nb} entries, found {}", row.len()),
            });
        }
        base.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(CodeError::Parse {
            line,
            msg: "trailing data after base matrix".into(),
        });
    }
    Ok((base, z as usize))
}

/// Ordered disjoint VN groups covering `0..N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    groups: Vec<Vec<usize>>,
}

impl GroupPartition {
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// True when the groups are pairwise disjoint and cover exactly `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        is_partition(self.groups.iter().map(Vec::as_slice), n)
    }
}

pub(crate) fn is_partition<'a>(groups: impl Iterator<Item = &'a [usize]>, n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut count = 0;
    for g in groups {
        for &v in g {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
            count += 1;
        }
    }
    count == n
}

/// Natural-order split into `g` groups of `⌊N/g⌋`; the last group absorbs any
/// remainder.
pub fn conventional_groups(n_vars: usize, g: usize) -> Result<GroupPartition, CodeError> {
    if g == 0 || g > n_vars {
        return Err(CodeError::GroupCount { g, n: n_vars });
    }
    let size = n_vars / g;
    let groups = (0..g)
        .map(|i| {
            let end = if i + 1 == g { n_vars } else { (i + 1) * size };
            (i * size..end).collect()
        })
        .collect();
    Ok(GroupPartition { groups })
}
