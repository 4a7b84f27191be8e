//! Exact feasibility for systems of linear equalities, weak and strict inequalities.
//!
//! Two-phase simplex over rationals with Bland's rule. A returned witness is a basic
//! solution of the lifted standard form, so equal inputs always give equal witnesses.

use super::vector::{Rational, RationalVector};
use num::{One, Signed, Zero};

/// Rows `a·x = b`, `a·x ≥ b` and `a·x > b` over a common ambient dimension.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub dim: usize,
    pub equalities: Vec<(RationalVector, Rational)>,
    pub weak: Vec<(RationalVector, Rational)>,
    pub strict: Vec<(RationalVector, Rational)>,
}

impl LinearSystem {
    /// No constraints at all.
    pub fn is_empty(&self) -> bool {
        self.equalities.is_empty() && self.weak.is_empty() && self.strict.is_empty()
    }

    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            ..Default::default()
        }
    }

    fn check(&self, a: &RationalVector) {
        assert_eq!(a.dim(), self.dim, "row dimension mismatch");
    }

    pub fn eq(&mut self, a: RationalVector, b: Rational) -> &mut Self {
        self.check(&a);
        self.equalities.push((a, b));
        self
    }

    pub fn ge(&mut self, a: RationalVector, b: Rational) -> &mut Self {
        self.check(&a);
        self.weak.push((a, b));
        self
    }

    pub fn le(&mut self, a: RationalVector, b: Rational) -> &mut Self {
        self.ge(-a, -b)
    }

    pub fn gt(&mut self, a: RationalVector, b: Rational) -> &mut Self {
        self.check(&a);
        self.strict.push((a, b));
        self
    }

    pub fn lt(&mut self, a: RationalVector, b: Rational) -> &mut Self {
        self.gt(-a, -b)
    }

    /// `x_i ≥ 0`.
    pub fn nonneg(&mut self, i: usize) -> &mut Self {
        self.ge(RationalVector::unit(self.dim, i), Rational::zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.equalities
            .iter()
            .chain(&self.weak)
            .chain(&self.strict)
            .all(|(_, b)| b.is_zero())
    }

    pub fn satisfied_by(&self, x: &RationalVector) -> bool {
        x.dim() == self.dim
            && self.equalities.iter().all(|(a, b)| &a.dot(x) == b)
            && self.weak.iter().all(|(a, b)| &a.dot(x) >= b)
            && self.strict.iter().all(|(a, b)| &a.dot(x) > b)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarMode {
    Free,
    NonNeg,
    NonPos,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rational]) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = self.rows[r].clone();
        let eliminate = |row: &mut [Rational]| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(obj);
        self.basis[r] = c;
    }

    /// Objective row for minimizing `cost·y` under the current basis.
    fn objective(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if !cb.is_zero() {
                for (o, x) in obj.iter_mut().zip(row) {
                    if !x.is_zero() {
                        *o -= cb * x;
                    }
                }
            }
        }
        obj
    }

    /// Minimizes with Bland's rule over columns flagged in `allowed`; false if unbounded.
    fn minimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        let mut obj = self.objective(cost);
        loop {
            let Some(c) = (0..self.ncols).find(|&j| allowed[j] && obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.ncols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, &mut obj);
        }
    }

    fn value(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rational::zero, |i| self.rows[i][self.ncols].clone())
    }
}

enum RowKind {
    Eq,
    Ge,
}

/// Exact witness satisfying every row of `sys`, or `None` when infeasible.
///
/// In homogeneous systems each strict row `a·x > 0` becomes `a·x ≥ 1`; the witness set is
/// a cone, so this is exact. Otherwise strict rows share a margin variable `t ∈ [0, 1]`
/// (`a·x − t ≥ b`) which is maximized; the system is feasible iff the optimum is positive.
pub fn feasible(sys: &LinearSystem) -> Option<RationalVector> {
    let n = sys.dim;
    let homogeneous = sys.is_homogeneous();
    let margin = !sys.strict.is_empty() && !homogeneous;

    // Sign bounds on single variables become variable modes instead of rows.
    let mut modes = vec![VarMode::Free; n];
    let mut rows: Vec<(Vec<Rational>, Rational, RowKind)> = Vec::new();
    for (a, b) in &sys.weak {
        let supp = a.support();
        if supp.len() == 1 && b.is_zero() && modes[supp[0]] == VarMode::Free {
            modes[supp[0]] = if a[supp[0]].is_positive() {
                VarMode::NonNeg
            } else {
                VarMode::NonPos
            };
            continue;
        }
        rows.push((a.entries().to_vec(), b.clone(), RowKind::Ge));
    }
    for (a, b) in &sys.equalities {
        rows.push((a.entries().to_vec(), b.clone(), RowKind::Eq));
    }
    let nvars = if margin { n + 1 } else { n };
    for (a, b) in &sys.strict {
        let mut coeffs = a.entries().to_vec();
        if margin {
            coeffs.push(-Rational::one());
            rows.push((coeffs, b.clone(), RowKind::Ge));
        } else {
            rows.push((coeffs, Rational::one(), RowKind::Ge));
        }
    }
    if margin {
        for row in rows.iter_mut() {
            if row.0.len() < nvars {
                row.0.push(Rational::zero());
            }
        }
        let mut cap = vec![Rational::zero(); nvars];
        cap[n] = -Rational::one();
        rows.push((cap, -Rational::one(), RowKind::Ge));
        modes.push(VarMode::NonNeg);
    }

    // Structural columns: one per signed variable, two for a free one.
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(nvars);
    let mut nstruct = 0;
    for mode in &modes {
        match mode {
            VarMode::Free => {
                var_cols.push((nstruct, Some(nstruct + 1)));
                nstruct += 2;
            }
            _ => {
                var_cols.push((nstruct, None));
                nstruct += 1;
            }
        }
    }
    let nslack = rows.iter().filter(|r| matches!(r.2, RowKind::Ge)).count();
    let m = rows.len();

    // Slack columns that can start basic (coefficient +1 after sign fix) need no artificial.
    let mut table: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut slack_of_row: Vec<Option<usize>> = Vec::with_capacity(m);
    let mut needs_art: Vec<bool> = Vec::with_capacity(m);
    let mut slack_idx = nstruct;
    for (coeffs, b, kind) in &rows {
        let mut row = vec![Rational::zero(); nstruct + nslack];
        for (v, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (p, neg) = var_cols[v];
            match modes[v] {
                VarMode::Free => {
                    row[p] = c.clone();
                    row[neg.unwrap()] = -c.clone();
                }
                VarMode::NonNeg => row[p] = c.clone(),
                VarMode::NonPos => row[p] = -c.clone(),
            }
        }
        let mut rhs = b.clone();
        let mut slack = None;
        if matches!(kind, RowKind::Ge) {
            row[slack_idx] = -Rational::one();
            slack = Some(slack_idx);
            slack_idx += 1;
        }
        if rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            rhs = -rhs;
        }
        let slack_basic = slack.is_some_and(|s| row[s].is_positive());
        needs_art.push(!slack_basic);
        slack_of_row.push(if slack_basic { slack } else { None });
        row.push(rhs);
        table.push(row);
    }
    let nart = needs_art.iter().filter(|&&x| x).count();
    let ncols = nstruct + nslack + nart;
    let mut basis = Vec::with_capacity(m);
    let mut art = nstruct + nslack;
    for (i, row) in table.iter_mut().enumerate() {
        let rhs = row.pop().unwrap();
        row.resize(ncols, Rational::zero());
        if needs_art[i] {
            row[art] = Rational::one();
            basis.push(art);
            art += 1;
        } else {
            basis.push(slack_of_row[i].unwrap());
        }
        row.push(rhs);
    }
    let mut tab = Tableau {
        rows: table,
        basis,
        ncols,
    };
    let first_art = nstruct + nslack;

    if nart > 0 {
        let mut cost = vec![Rational::zero(); ncols];
        for c in cost.iter_mut().skip(first_art) {
            *c = Rational::one();
        }
        let all = vec![true; ncols];
        tab.minimize(&cost, &all);
        let infeasibility: Rational = (first_art..ncols).map(|c| tab.value(c)).sum();
        if infeasibility.is_positive() {
            return None;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_art {
                if let Some(c) = (0..first_art).find(|&c| !tab.rows[i][c].is_zero()) {
                    let mut dummy = vec![Rational::zero(); ncols + 1];
                    tab.pivot(i, c, &mut dummy);
                } else {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    if margin {
        let tcol = var_cols[n].0;
        let mut cost = vec![Rational::zero(); ncols];
        cost[tcol] = -Rational::one();
        let allowed: Vec<bool> = (0..ncols).map(|c| c < first_art).collect();
        let bounded = tab.minimize(&cost, &allowed);
        debug_assert!(bounded, "margin variable is capped");
        if !tab.value(tcol).is_positive() {
            return None;
        }
    }

    let mut x = RationalVector::zeros(n);
    for v in 0..n {
        let (p, neg) = var_cols[v];
        let val = match modes[v] {
            VarMode::Free => tab.value(p) - tab.value(neg.unwrap()),
            VarMode::NonNeg => tab.value(p),
            VarMode::NonPos => -tab.value(p),
        };
        x[v] = val;
    }
    debug_assert!(sys.satisfied_by(&x), "simplex witness violates the system");
    Some(x)
}
