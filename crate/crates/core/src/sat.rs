//! 3SAT formulas, DIMACS input and a brute-force oracle.

use std::fmt;

use crate::error::{Error, Result};

/// Largest variable count `brute_force_sat` accepts.
pub const ORACLE_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Parse("formula needs at least one variable".into()));
        }
        for c in &clauses {
            for l in c {
                if l.var == 0 || l.var > num_vars {
                    return Err(Error::Parse(format!("literal {l} out of range 1..={num_vars}")));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64;
                out.push_str(&format!("{} ", if l.positive { v } else { -v }));
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.clauses.iter().map(|c| format!("({} | {} | {})", c[0], c[1], c[2])).collect();
        write!(f, "{}", parts.join(" & "))
    }
}

/// Reads DIMACS CNF. Clauses shorter than three literals are padded by
/// repeating their last literal.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut num_vars = None;
    let mut clauses = Vec::new();
    let mut current: Vec<(i64, usize)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(Error::Dimacs { line: line_no, msg: "expected 'p cnf <vars> <clauses>'".into() });
            }
            let n: usize = fields[1]
                .parse()
                .map_err(|_| Error::Dimacs { line: line_no, msg: format!("bad variable count '{}'", fields[1]) })?;
            num_vars = Some(n);
            continue;
        }
        let Some(n) = num_vars else {
            return Err(Error::Dimacs { line: line_no, msg: "clause before problem line".into() });
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::Dimacs { line: line_no, msg: format!("bad literal '{tok}'") })?;
            if v == 0 {
                clauses.push(finish_clause(&current, line_no)?);
                current.clear();
            } else {
                if v.unsigned_abs() as usize > n {
                    return Err(Error::Dimacs {
                        line: line_no,
                        msg: format!("literal {v} exceeds variable count {n}"),
                    });
                }
                current.push((v, line_no));
            }
        }
    }
    if !current.is_empty() {
        clauses.push(finish_clause(&current, last_line)?);
    }
    let n = num_vars.ok_or(Error::Dimacs { line: 0, msg: "missing problem line".into() })?;
    CnfFormula::new(n, clauses)
}

fn finish_clause(lits: &[(i64, usize)], line: usize) -> Result<Clause> {
    match lits.len() {
        0 => Err(Error::Dimacs { line, msg: "empty clause".into() }),
        1..=3 => {
            let conv = |v: i64| Literal { var: v.unsigned_abs() as usize, positive: v > 0 };
            let mut out = [conv(lits[lits.len() - 1].0); 3];
            for (k, (v, _)) in lits.iter().enumerate() {
                out[k] = conv(*v);
            }
            Ok(out)
        }
        k => Err(Error::Dimacs { line, msg: format!("clause has {k} literals, at most 3 allowed") }),
    }
}

/// Exhaustive search over all 2^N assignments in counting order.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    if f.num_vars > ORACLE_LIMIT {
        return Err(Error::TooManyVars(f.num_vars, ORACLE_LIMIT));
    }
    // Clause masks: bit v set in `pos` if xv appears positively.
    let masks: Vec<(u32, u32)> = f
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0u32, 0u32), |(p, n), l| {
                let b = 1 << (l.var - 1);
                if l.positive {
                    (p | b, n)
                } else {
                    (p, n | b)
                }
            })
        })
        .collect();
    for a in 0u32..(1u32 << f.num_vars) {
        if masks.iter().all(|(p, n)| a & p != 0 || !a & n != 0) {
            return Ok(Some((0..f.num_vars).map(|v| a >> v & 1 == 1).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_padding() {
        let f = parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(f.num_vars, 2);
        assert_eq!(f.clauses, vec![[Literal::pos(1), Literal::neg(2), Literal::neg(2)]]);
    }

    #[test]
    fn dimacs_two_clauses() {
        let f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 -1 2 0\n").unwrap();
        assert_eq!(f.clauses[0], [Literal::pos(1), Literal::neg(2), Literal::pos(3)]);
        assert_eq!(f.clauses[1], [Literal::neg(1), Literal::neg(1), Literal::pos(2)]);
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(parse_dimacs("p cnf 1 1\n1 2 0\n"), Err(Error::Dimacs { .. })));
        assert!(parse_dimacs("p cnf 2 1\n0\n").is_err());
        assert!(parse_dimacs("p cnf 4 1\n1 2 3 4 0\n").is_err());
        assert!(parse_dimacs("1 2 0\n").is_err());
    }

    #[test]
    fn oracle_examples() {
        let f = CnfFormula::new(1, vec![[Literal::pos(1); 3]]).unwrap();
        assert_eq!(brute_force_sat(&f).unwrap(), Some(vec![true]));
        let g = CnfFormula::new(1, vec![[Literal::pos(1); 3], [Literal::neg(1); 3]]).unwrap();
        assert_eq!(brute_force_sat(&g).unwrap(), None);
        let big = CnfFormula::new(25, vec![]).unwrap();
        assert!(matches!(brute_force_sat(&big), Err(Error::TooManyVars(25, 24))));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 -1 2 0\n").unwrap();
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}
