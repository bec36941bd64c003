//! Exact two-phase simplex over `Q` with Bland's rule, plus Farkas
//! infeasibility certificates.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{dot, format_q, serde_qmat, serde_qvec, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    pub rhs: Q,
}

/// `minimize c.x` subject to linear constraints; variables are free unless
/// marked nonnegative.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    n_vars: usize,
    nonneg: Vec<bool>,
    constraints: Vec<Constraint>,
    objective: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram { n_vars, nonneg: vec![false; n_vars], constraints: Vec::new(), objective: vec![Q::zero(); n_vars] }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn set_nonneg(&mut self, var: usize) -> &mut Self {
        self.nonneg[var] = true;
        self
    }

    pub fn all_nonneg(&mut self) -> &mut Self {
        self.nonneg.iter_mut().for_each(|b| *b = true);
        self
    }

    pub fn add(&mut self, coeffs: Vec<Q>, rel: Relation, rhs: Q) -> &mut Self {
        assert_eq!(coeffs.len(), self.n_vars, "constraint width");
        self.constraints.push(Constraint { coeffs, rel, rhs });
        self
    }

    pub fn minimize(&mut self, c: Vec<Q>) -> &mut Self {
        assert_eq!(c.len(), self.n_vars, "objective width");
        self.objective = c;
        self
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Whether `x` satisfies every constraint and sign restriction.
    pub fn satisfies(&self, x: &[Q]) -> bool {
        x.len() == self.n_vars
            && self.nonneg.iter().zip(x).all(|(nn, v)| !nn || !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, x);
                match c.rel {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn solve(&self) -> LpOutcome {
        // column layout: for each var either [x] or [x+, x-]; then slacks; then artificials
        let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.n_vars);
        let mut ncols = 0;
        for &nn in &self.nonneg {
            if nn {
                var_cols.push((ncols, None));
                ncols += 1;
            } else {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
        let m = self.constraints.len();
        let n_slack = self.constraints.iter().filter(|c| c.rel != Relation::Eq).count();
        let slack0 = ncols;
        let art0 = slack0 + n_slack;
        let total = art0 + m;
        let mut rows: Vec<Vec<Q>> = Vec::with_capacity(m);
        let mut s = slack0;
        for (i, c) in self.constraints.iter().enumerate() {
            let mut row = vec![Q::zero(); total + 1];
            for (v, a) in c.coeffs.iter().enumerate() {
                let (p, n) = var_cols[v];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a.clone();
                }
            }
            match c.rel {
                Relation::Le => {
                    row[s] = Q::one();
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -Q::one();
                    s += 1;
                }
                Relation::Eq => {}
            }
            row[total] = c.rhs.clone();
            if row[total].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            row[art0 + i] = Q::one();
            rows.push(row);
        }
        let mut t = Tableau { rows, basis: (art0..art0 + m).collect(), ncols: total };

        let mut phase1 = vec![Q::zero(); total];
        phase1[art0..].iter_mut().for_each(|c| *c = Q::one());
        let all = vec![true; total];
        t.run(&phase1, &all).expect("phase one is bounded below");
        let infeas: Q = t.basis.iter().zip(&t.rows).filter(|(b, _)| **b >= art0).map(|(_, r)| r[total].clone()).sum();
        if infeas.is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive artificials out of the basis; drop redundant rows
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art0 {
                if let Some(c) = (0..art0).find(|&c| !t.rows[i][c].is_zero()) {
                    t.pivot(i, c);
                } else {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        let mut cost = vec![Q::zero(); total];
        for (v, c) in self.objective.iter().enumerate() {
            let (p, n) = var_cols[v];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c.clone();
            }
        }
        let allowed: Vec<bool> = (0..total).map(|c| c < art0).collect();
        if t.run(&cost, &allowed).is_err() {
            return LpOutcome::Unbounded;
        }
        let mut col_val = vec![Q::zero(); total];
        for (r, &b) in t.rows.iter().zip(&t.basis) {
            col_val[b] = r[total].clone();
        }
        let x: Vec<Q> = var_cols
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &col_val[p] - &col_val[n],
                None => col_val[p].clone(),
            })
            .collect();
        let value = dot(&self.objective, &x);
        debug_assert!(self.satisfies(&x));
        LpOutcome::Optimal { x, value }
    }

    pub fn is_feasible(&self) -> bool {
        let mut p = self.clone();
        p.objective = vec![Q::zero(); self.n_vars];
        p.solve().is_feasible()
    }

    /// The system as `G x <= h` over free variables.
    fn as_upper_system(&self) -> Vec<(Vec<Q>, Q)> {
        let mut out = Vec::new();
        for c in &self.constraints {
            let neg: Vec<Q> = c.coeffs.iter().map(|x| -x).collect();
            match c.rel {
                Relation::Le => out.push((c.coeffs.clone(), c.rhs.clone())),
                Relation::Ge => out.push((neg, -c.rhs.clone())),
                Relation::Eq => {
                    out.push((c.coeffs.clone(), c.rhs.clone()));
                    out.push((neg, -c.rhs.clone()));
                }
            }
        }
        for (v, &nn) in self.nonneg.iter().enumerate() {
            if nn {
                let mut row = vec![Q::zero(); self.n_vars];
                row[v] = -Q::one();
                out.push((row, Q::zero()));
            }
        }
        out
    }

    /// A Farkas certificate of infeasibility, if the program is infeasible.
    pub fn farkas_certificate(&self) -> Option<FarkasCertificate> {
        let sys = self.as_upper_system();
        let k = sys.len();
        let mut dual = LinearProgram::new(k);
        dual.all_nonneg();
        for v in 0..self.n_vars {
            dual.add(sys.iter().map(|(g, _)| g[v].clone()).collect(), Relation::Eq, Q::zero());
        }
        dual.add(sys.iter().map(|(_, h)| h.clone()).collect(), Relation::Eq, -Q::one());
        match dual.solve() {
            LpOutcome::Optimal { x, .. } => {
                let cert = FarkasCertificate {
                    rows: sys.iter().map(|(g, _)| g.clone()).collect(),
                    rhs: sys.iter().map(|(_, h)| h.clone()).collect(),
                    multipliers: x,
                };
                debug_assert!(cert.verify());
                Some(cert)
            }
            _ => None,
        }
    }
}

/// Nonnegative multipliers `y` with `y^T G = 0` and `y^T h < 0` for a
/// system `G x <= h`, proving it has no solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    #[serde(with = "serde_qmat")]
    pub rows: Vec<Vec<Q>>,
    #[serde(with = "serde_qvec")]
    pub rhs: Vec<Q>,
    #[serde(with = "serde_qvec")]
    pub multipliers: Vec<Q>,
}

impl FarkasCertificate {
    pub fn verify(&self) -> bool {
        if self.multipliers.len() != self.rows.len() || self.multipliers.iter().any(|y| y.is_negative()) {
            return false;
        }
        let n = self.rows.first().map_or(0, Vec::len);
        let combo_zero = (0..n).all(|v| self.rows.iter().zip(&self.multipliers).map(|(r, y)| &r[v] * y).sum::<Q>().is_zero());
        combo_zero && dot(&self.multipliers, &self.rhs).is_negative()
    }

    /// The contradiction `0 <= y.h < 0` value.
    pub fn violation(&self) -> Q {
        dot(&self.multipliers, &self.rhs)
    }

    pub fn summary(&self) -> String {
        format!("{} multipliers, combination yields 0 <= {}", self.multipliers.iter().filter(|y| !y.is_zero()).count(), format_q(&self.violation()))
    }
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    ncols: usize,
}

#[derive(Debug)]
struct Unbounded;

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    fn run(&mut self, cost: &[Q], allowed: &[bool]) -> Result<(), Unbounded> {
        let rhs = self.ncols;
        loop {
            let entering = (0..self.ncols).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && {
                    let z: Q = self.rows.iter().zip(&self.basis).map(|(r, &b)| &cost[b] * &r[j]).sum();
                    (&cost[j] - z).is_negative()
                }
            });
            let Some(j) = entering else { return Ok(()) };
            let mut best: Option<(Q, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[rhs] / &row[j];
                    let better = match &best {
                        None => true,
                        Some((br, bi)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            let Some((_, r)) = best else { return Err(Unbounded) };
            self.pivot(r, j);
        }
    }
}
