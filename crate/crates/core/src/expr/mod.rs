//! A small scalar expression language.
//!
//! Curves, surfaces and metrics are supplied as text such as
//! `"R*sin(p)*cos(q)"`. Parsed trees are immutable and evaluate over any
//! [`Real`](crate::jets::Real), so the same tree yields plain values or
//! jets carrying derivatives.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := "-" factor | power ;
//! power  := atom ("^" factor)? ;
//! atom   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")" ;
//! ```

mod eval;
mod parse;

use std::fmt;

pub use eval::{Bindings, EvalError};
pub use parse::{parse, parse_list, parse_with_constants, ParseError, TokenKind};

/// Variable names recognized by the language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    T,
    U,
    V,
    P,
    Q,
}

impl Var {
    pub const ALL: [Var; 8] = [Var::X, Var::Y, Var::Z, Var::T, Var::U, Var::V, Var::P, Var::Q];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::T => "t",
            Var::U => "u",
            Var::V => "v",
            Var::P => "p",
            Var::Q => "q",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Built-in functions. All are smooth on their domain; non-smooth
/// functions such as `abs` or `min` are not part of the language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Atan,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Var(Var),
    Neg(Box<Node>),
    Call(Func, Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr { root: const_node(c) }
    }

    pub fn var(v: Var) -> Expr {
        Expr { root: Node::Var(v) }
    }

    /// Distinct variables appearing in the tree, sorted.
    pub fn free_vars(&self) -> Vec<Var> {
        fn walk(n: &Node, out: &mut Vec<Var>) {
            match n {
                Node::Const(_) => {}
                Node::Var(v) => {
                    if !out.contains(v) {
                        out.push(*v)
                    }
                }
                Node::Neg(a) | Node::Call(_, a) => walk(a, out),
                Node::Binary(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out.sort();
        out
    }

    /// Copy of the tree with every variable replaced through `map`.
    pub fn rename_vars(&self, map: impl Fn(Var) -> Var) -> Expr {
        fn walk(n: &Node, map: &dyn Fn(Var) -> Var) -> Node {
            match n {
                Node::Const(c) => Node::Const(*c),
                Node::Var(v) => Node::Var(map(*v)),
                Node::Neg(a) => Node::Neg(Box::new(walk(a, map))),
                Node::Call(f, a) => Node::Call(*f, Box::new(walk(a, map))),
                Node::Binary(op, a, b) => Node::Binary(*op, Box::new(walk(a, map)), Box::new(walk(b, map))),
            }
        }
        Expr { root: walk(&self.root, &map) }
    }

    /// True when the tree mentions only variables from `allowed`.
    pub fn uses_only(&self, allowed: &[Var]) -> bool {
        self.free_vars().iter().all(|v| allowed.contains(v))
    }
}

/// Negative constants are stored as a negation so that the printed form
/// re-parses to the same tree.
fn const_node(c: f64) -> Node {
    if c.is_sign_negative() && c != 0.0 {
        Node::Neg(Box::new(Node::Const(-c)))
    } else {
        Node::Const(c)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Debug formatting is the shortest representation that
            // round-trips, e.g. `0.1`, `1e-5`, `2.0`.
            Node::Const(c) => write!(f, "{c:?}"),
            Node::Var(v) => f.write_str(v.name()),
            Node::Neg(a) => write!(f, "(-{a})"),
            Node::Call(func, a) => write!(f, "{}({a})", func.name()),
            Node::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

/// Canonical, fully parenthesized form.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn free_vars_are_sorted_and_unique() {
        let e = parse("q*x + sin(x) - p^2").unwrap();
        assert_eq!(e.free_vars(), vec![Var::X, Var::P, Var::Q]);
        assert!(e.uses_only(&[Var::X, Var::P, Var::Q, Var::Z]));
        assert!(!e.uses_only(&[Var::X]));
    }

    #[test]
    fn renaming_substitutes_variables() {
        let e = parse("x*y + x").unwrap();
        let r = e.rename_vars(|v| if v == Var::X { Var::P } else { Var::Q });
        assert_eq!(r.to_string(), "((p * q) + p)");
    }

    #[test]
    fn printing_is_canonical() {
        let e = parse("-x^2 + 3*y/2").unwrap();
        assert_eq!(e.to_string(), "((-(x ^ 2.0)) + ((3.0 * y) / 2.0))");
        let n = Expr::constant(-2.5);
        assert_eq!(parse(&n.to_string()).unwrap(), n);
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0.0f64..100.0).prop_map(|c| format!("{c}")),
            (1e-8f64..1e-3).prop_map(|c| format!("{c:e}")),
            prop::sample::select(vec!["x", "y", "z", "t", "u", "v", "p", "q", "pi"])
                .prop_map(String::from),
        ];
        leaf.prop_recursive(5, 48, 3, |inner| {
            prop_oneof![
                (inner.clone(), prop::sample::select(vec!["+", "-", "*", "/", "^"]), inner.clone())
                    .prop_map(|(a, op, b)| format!("({a}){op}({b})")),
                inner.clone().prop_map(|a| format!("-{a}")),
                (prop::sample::select(vec!["sin", "cosh", "exp", "sqrt", "atan"]), inner)
                    .prop_map(|(f, a)| format!("{f}({a})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_print_parse_is_a_fixpoint(text in arb_expr()) {
            let first = parse(&text).unwrap();
            let printed = first.to_string();
            let second = parse(&printed).unwrap();
            prop_assert_eq!(&first, &second);
            prop_assert_eq!(printed, second.to_string());
        }
    }
}
