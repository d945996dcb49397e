use thiserror::Error;

use super::{BinOp, Expr, Func, Node, Var};
use crate::jets::{JetError, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound variable '{0}'")]
    UnboundVariable(&'static str),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Values bound to the language's variables for one evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Bindings<T> {
    slots: [Option<T>; 8],
}

impl<T: Copy> Default for Bindings<T> {
    fn default() -> Self {
        Bindings { slots: [None; 8] }
    }
}

impl<T: Copy> Bindings<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: Var, value: T) -> Self {
        self.set(var, value);
        self
    }

    pub fn set(&mut self, var: Var, value: T) {
        self.slots[var.index()] = Some(value);
    }

    pub fn get(&self, var: Var) -> Option<T> {
        self.slots[var.index()]
    }

    /// Binds a surface or metric coordinate pair under both spellings,
    /// `(u, v)` and `(p, q)`.
    pub fn chart(first: T, second: T) -> Self {
        Self::new()
            .with(Var::U, first)
            .with(Var::P, first)
            .with(Var::V, second)
            .with(Var::Q, second)
    }

    pub fn xy(x: T, y: T) -> Self {
        Self::new().with(Var::X, x).with(Var::Y, y)
    }

    pub fn xyz(x: T, y: T, z: T) -> Self {
        Self::new().with(Var::X, x).with(Var::Y, y).with(Var::Z, z)
    }
}

impl Expr {
    /// Evaluates the tree with the given bindings.
    pub fn eval<T: Real>(&self, bindings: &Bindings<T>) -> Result<T, EvalError> {
        eval_node(&self.root, bindings)
    }

    /// Convenience for plain reals.
    pub fn eval_f64(&self, bindings: &[(Var, f64)]) -> Result<f64, EvalError> {
        let mut b = Bindings::new();
        for &(var, value) in bindings {
            b.set(var, value);
        }
        self.eval(&b)
    }
}

fn eval_node<T: Real>(node: &Node, b: &Bindings<T>) -> Result<T, EvalError> {
    Ok(match node {
        Node::Const(c) => T::constant(*c),
        Node::Var(v) => b.get(*v).ok_or(EvalError::UnboundVariable(v.name()))?,
        Node::Neg(a) => -eval_node(a, b)?,
        Node::Call(func, a) => {
            let x = eval_node(a, b)?;
            match func {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => x.tan()?,
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Tanh => x.tanh(),
                Func::Exp => x.exp(),
                Func::Log => x.ln()?,
                Func::Sqrt => x.sqrt()?,
                Func::Atan => x.atan(),
            }
        }
        Node::Binary(op, l, r) => {
            let lhs = eval_node(l, b)?;
            let rhs = eval_node(r, b)?;
            match op {
                BinOp::Add => lhs + rhs,
                BinOp::Sub => lhs - rhs,
                BinOp::Mul => lhs * rhs,
                BinOp::Div => lhs.checked_div(rhs)?,
                BinOp::Pow => lhs.pow(rhs)?,
            }
        }
    })
}
