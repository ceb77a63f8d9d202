//! Adjacency functions as small expression trees over point and line
//! coordinates, compiled to a postfix program for evaluation.

use super::AdgError;
use crate::gf::{Fe, FieldCtx};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A polynomial-style expression in the coordinates `p_i` and `ℓ_i`
/// (1-based) with field constants in integer encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Point(usize),
    Line(usize),
    Const(u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u64),
}

/// `p_i`
pub fn p(i: usize) -> Expr {
    Expr::Point(i)
}

/// `ℓ_i`
pub fn l(i: usize) -> Expr {
    Expr::Line(i)
}

pub fn konst(c: u32) -> Expr {
    Expr::Const(c)
}

impl Expr {
    pub fn pow(self, e: u64) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    /// Exchanges every `p_i` with `ℓ_i`.
    pub fn swap_sides(&self) -> Expr {
        match self {
            Expr::Point(i) => Expr::Line(*i),
            Expr::Line(i) => Expr::Point(*i),
            Expr::Const(c) => Expr::Const(*c),
            Expr::Add(a, b) => Expr::Add(Box::new(a.swap_sides()), Box::new(b.swap_sides())),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.swap_sides()), Box::new(b.swap_sides())),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.swap_sides()), Box::new(b.swap_sides())),
            Expr::Neg(a) => Expr::Neg(Box::new(a.swap_sides())),
            Expr::Pow(a, e) => Expr::Pow(Box::new(a.swap_sides()), *e),
        }
    }

    /// Coordinate indices referenced on either side.
    pub fn indices(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_indices(&mut out);
        out
    }

    fn collect_indices(&self, out: &mut BTreeSet<usize>) {
        match self {
            Expr::Point(i) | Expr::Line(i) => {
                out.insert(*i);
            }
            Expr::Const(_) => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_indices(out);
                b.collect_indices(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_indices(out),
        }
    }

    fn emit(&self, ops: &mut Vec<Op>) {
        match self {
            Expr::Point(i) => ops.push(Op::Point(*i as u8 - 1)),
            Expr::Line(i) => ops.push(Op::Line(*i as u8 - 1)),
            Expr::Const(c) => ops.push(Op::Const(Fe(*c))),
            Expr::Add(a, b) => {
                a.emit(ops);
                b.emit(ops);
                ops.push(Op::Add);
            }
            Expr::Sub(a, b) => {
                a.emit(ops);
                b.emit(ops);
                ops.push(Op::Sub);
            }
            Expr::Mul(a, b) => {
                a.emit(ops);
                b.emit(ops);
                ops.push(Op::Mul);
            }
            Expr::Neg(a) => {
                a.emit(ops);
                ops.push(Op::Neg);
            }
            Expr::Pow(a, e) => {
                a.emit(ops);
                ops.push(Op::Pow(*e));
            }
        }
    }

    fn check(&self, j: usize, order: u32) -> Result<(), AdgError> {
        match self {
            Expr::Point(i) | Expr::Line(i) if *i == 0 || *i >= j => {
                Err(AdgError::BadExpression(format!(
                    "f_{j} may only use coordinates 1..{}, found index {i}",
                    j - 1
                )))
            }
            Expr::Const(c) if *c >= order => Err(AdgError::BadExpression(format!(
                "constant {c} outside a field of order {order}"
            ))),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.check(j, order)?;
                b.check(j, order)
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.check(j, order),
            _ => Ok(()),
        }
    }
}

macro_rules! expr_binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl std::ops::$tr for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}
expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Point(u8),
    Line(u8),
    Const(Fe),
    Add,
    Sub,
    Mul,
    Neg,
    Pow(u64),
}

const STACK: usize = 32;

/// Postfix form of an [`Expr`].
#[derive(Clone, Debug)]
pub struct Program {
    ops: Vec<Op>,
}

impl Program {
    /// Compiles `f_j`, rejecting references to coordinates `≥ j`.
    pub fn compile(expr: &Expr, j: usize, order: u32) -> Result<Program, AdgError> {
        expr.check(j, order)?;
        let mut ops = Vec::new();
        expr.emit(&mut ops);
        let mut depth = 0usize;
        let mut max = 0usize;
        for op in &ops {
            match op {
                Op::Point(_) | Op::Line(_) | Op::Const(_) => depth += 1,
                Op::Add | Op::Sub | Op::Mul => depth -= 1,
                Op::Neg | Op::Pow(_) => {}
            }
            max = max.max(depth);
        }
        if max > STACK {
            return Err(AdgError::BadExpression(format!(
                "expression needs a stack of {max}"
            )));
        }
        Ok(Program { ops })
    }

    /// Evaluates with `points[i-1] = p_i` and `lines[i-1] = ℓ_i`.
    #[inline]
    pub fn eval(&self, f: &FieldCtx, points: &[Fe], lines: &[Fe]) -> Fe {
        let mut stack = [Fe::ZERO; STACK];
        let mut sp = 0usize;
        for op in &self.ops {
            match *op {
                Op::Point(i) => {
                    stack[sp] = points[i as usize];
                    sp += 1;
                }
                Op::Line(i) => {
                    stack[sp] = lines[i as usize];
                    sp += 1;
                }
                Op::Const(c) => {
                    stack[sp] = c;
                    sp += 1;
                }
                Op::Add => {
                    sp -= 1;
                    stack[sp - 1] = f.add(stack[sp - 1], stack[sp]);
                }
                Op::Sub => {
                    sp -= 1;
                    stack[sp - 1] = f.sub(stack[sp - 1], stack[sp]);
                }
                Op::Mul => {
                    sp -= 1;
                    stack[sp - 1] = f.mul(stack[sp - 1], stack[sp]);
                }
                Op::Neg => stack[sp - 1] = f.neg(stack[sp - 1]),
                Op::Pow(e) => stack[sp - 1] = f.pow(stack[sp - 1], e),
            }
        }
        debug_assert_eq!(sp, 1);
        stack[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn evaluates_like_direct_arithmetic() {
        let f = make_field(3, 2).unwrap();
        let e = p(1).pow(3) * l(1).pow(2) - p(2) * l(1) + konst(4);
        let prog = Program::compile(&e, 3, f.order()).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let pts = [a, Fe(5)];
                let lns = [b, Fe(7)];
                let want = f.add(
                    f.sub(f.mul(f.pow(a, 3), f.pow(b, 2)), f.mul(Fe(5), b)),
                    Fe(4),
                );
                assert_eq!(prog.eval(&f, &pts, &lns), want);
            }
        }
    }

    #[test]
    fn rejects_forward_references_and_bad_constants() {
        assert!(Program::compile(&(p(2) * l(1)), 2, 4).is_err());
        assert!(Program::compile(&(p(0) * l(1)), 2, 4).is_err());
        assert!(Program::compile(&konst(4), 2, 4).is_err());
        assert!(Program::compile(&(p(1) * l(1)), 2, 4).is_ok());
    }

    #[test]
    fn swap_and_serde() {
        let e = p(1).pow(2) * l(1);
        assert_eq!(e.swap_sides(), l(1).pow(2) * p(1));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"mul":[{"pow":[{"point":1},2]},{"line":1}]}"#);
        assert_eq!(serde_json::from_str::<Expr>(&s).unwrap(), e);
    }
}
