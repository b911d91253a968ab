//! Scalar expressions: parsing, exact symbolic differentiation and evaluation.
//!
//! Expressions are immutable trees with shared subtrees, so cloning is cheap
//! and derivatives reuse the nodes of the expression they came from. The only
//! rewriting done by the constructors is constant folding and the 0/1
//! identities (`x + 0`, `1 * x`, `x ^ 1`, ...); correctness is judged by
//! evaluation, never by canonical form.

mod parser;
mod tape;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use parser::parse;
pub use tape::Tape;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("domain error in `{node}` at argument value {value}")]
    Domain { node: String, value: f64 },
}

/// Elementary functions of one argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Sin,
        Func::Cos,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Applies the function, rejecting arguments outside its real domain.
    pub fn apply(self, x: f64) -> Result<f64, ExprError> {
        let domain = |ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(ExprError::Domain {
                    node: self.name().to_string(),
                    value: x,
                })
            }
        };
        Ok(match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
            Func::Exp => x.exp(),
            Func::Log => {
                domain(x > 0.0)?;
                x.ln()
            }
            Func::Sqrt => {
                domain(x >= 0.0)?;
                x.sqrt()
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    Var(String),
    Neg(Expr),
    Call(Func, Expr),
    Binary(BinOp, Expr, Expr),
    /// Power with a constant real exponent.
    Pow(Expr, f64),
}

/// An immutable expression tree.
#[derive(Clone, PartialEq)]
pub struct Expr(Arc<Node>);

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn wrap(node: Node) -> Expr {
        Expr(Arc::new(node))
    }

    pub fn constant(value: f64) -> Expr {
        Expr::wrap(Node::Const(value))
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::wrap(Node::Var(name.into()))
    }

    pub fn as_const(&self) -> Option<f64> {
        match self.node() {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    fn is_const(&self, value: f64) -> bool {
        self.as_const() == Some(value)
    }

    pub fn neg(self) -> Expr {
        match self.node() {
            Node::Const(c) => Expr::constant(-c),
            _ => Expr::wrap(Node::Neg(self)),
        }
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::wrap(Node::Call(func, arg))
    }

    pub fn add(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a + b),
            (Some(0.0), _) => rhs,
            (_, Some(0.0)) => self,
            _ => Expr::wrap(Node::Binary(BinOp::Add, self, rhs)),
        }
    }

    pub fn sub(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a - b),
            (Some(0.0), _) => rhs.neg(),
            (_, Some(0.0)) => self,
            _ => Expr::wrap(Node::Binary(BinOp::Sub, self, rhs)),
        }
    }

    pub fn mul(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a * b),
            (Some(0.0), _) => Expr::constant(0.0),
            (_, Some(0.0)) => Expr::constant(0.0),
            (Some(1.0), _) => rhs,
            (_, Some(1.0)) => self,
            _ => Expr::wrap(Node::Binary(BinOp::Mul, self, rhs)),
        }
    }

    pub fn div(self, rhs: Expr) -> Expr {
        if self.is_const(0.0) {
            return Expr::constant(0.0);
        }
        if rhs.is_const(1.0) {
            return self;
        }
        Expr::wrap(Node::Binary(BinOp::Div, self, rhs))
    }

    pub fn pow(self, exponent: f64) -> Expr {
        if exponent == 1.0 {
            return self;
        }
        if exponent == 0.0 {
            return Expr::constant(1.0);
        }
        Expr::wrap(Node::Pow(self, exponent))
    }

    pub fn sin(self) -> Expr {
        Expr::call(Func::Sin, self)
    }
    pub fn cos(self) -> Expr {
        Expr::call(Func::Cos, self)
    }
    pub fn sinh(self) -> Expr {
        Expr::call(Func::Sinh, self)
    }
    pub fn cosh(self) -> Expr {
        Expr::call(Func::Cosh, self)
    }
    pub fn tanh(self) -> Expr {
        Expr::call(Func::Tanh, self)
    }
    pub fn exp(self) -> Expr {
        Expr::call(Func::Exp, self)
    }
    pub fn log(self) -> Expr {
        Expr::call(Func::Log, self)
    }
    pub fn sqrt(self) -> Expr {
        Expr::call(Func::Sqrt, self)
    }

    /// Exact derivative with respect to `var`.
    pub fn differentiate(&self, var: &str) -> Expr {
        match self.node() {
            Node::Const(_) => Expr::constant(0.0),
            Node::Var(name) => Expr::constant(if name == var { 1.0 } else { 0.0 }),
            Node::Neg(e) => e.differentiate(var).neg(),
            Node::Call(func, e) => {
                let de = e.differentiate(var);
                if de.is_const(0.0) {
                    return de;
                }
                let outer = match func {
                    Func::Sin => e.clone().cos(),
                    Func::Cos => e.clone().sin().neg(),
                    Func::Sinh => e.clone().cosh(),
                    Func::Cosh => e.clone().sinh(),
                    Func::Tanh => Expr::constant(1.0).sub(e.clone().tanh().pow(2.0)),
                    Func::Exp => self.clone(),
                    Func::Log => return de.div(e.clone()),
                    Func::Sqrt => return de.div(Expr::constant(2.0).mul(self.clone())),
                };
                outer.mul(de)
            }
            Node::Binary(op, a, b) => {
                let da = a.differentiate(var);
                let db = b.differentiate(var);
                match op {
                    BinOp::Add => da.add(db),
                    BinOp::Sub => da.sub(db),
                    BinOp::Mul => da.mul(b.clone()).add(a.clone().mul(db)),
                    BinOp::Div => {
                        if db.is_const(0.0) {
                            da.div(b.clone())
                        } else {
                            da.mul(b.clone())
                                .sub(a.clone().mul(db))
                                .div(b.clone().pow(2.0))
                        }
                    }
                }
            }
            Node::Pow(base, k) => {
                let db = base.differentiate(var);
                if db.is_const(0.0) {
                    return db;
                }
                Expr::constant(*k).mul(base.clone().pow(k - 1.0)).mul(db)
            }
        }
    }

    /// Replaces every occurrence of the variable `name` by `with`.
    pub fn substitute(&self, name: &str, with: &Expr) -> Expr {
        match self.node() {
            Node::Const(_) => self.clone(),
            Node::Var(v) => {
                if v == name {
                    with.clone()
                } else {
                    self.clone()
                }
            }
            Node::Neg(e) => Expr::wrap(Node::Neg(e.substitute(name, with))),
            Node::Call(f, e) => Expr::call(*f, e.substitute(name, with)),
            Node::Binary(op, a, b) => Expr::wrap(Node::Binary(
                *op,
                a.substitute(name, with),
                b.substitute(name, with),
            )),
            Node::Pow(b, k) => Expr::wrap(Node::Pow(b.substitute(name, with), *k)),
        }
    }

    /// Free variables in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e.node() {
                Node::Const(_) => {}
                Node::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Node::Neg(a) | Node::Call(_, a) | Node::Pow(a, _) => walk(a, out),
                Node::Binary(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub fn evaluate(&self, bindings: &Bindings) -> Result<f64, ExprError> {
        match self.node() {
            Node::Const(c) => Ok(*c),
            Node::Var(v) => bindings
                .get(v)
                .ok_or_else(|| ExprError::UnboundVariable(v.clone())),
            Node::Neg(e) => Ok(-e.evaluate(bindings)?),
            Node::Call(f, e) => f.apply(e.evaluate(bindings)?),
            Node::Binary(op, a, b) => {
                let (x, y) = (a.evaluate(bindings)?, b.evaluate(bindings)?);
                binary(*op, x, y)
            }
            Node::Pow(b, k) => power(b.evaluate(bindings)?, *k),
        }
    }

    fn precedence(&self) -> u8 {
        match self.node() {
            Node::Binary(op, _, _) => op.precedence(),
            Node::Neg(_) => 3,
            Node::Pow(..) => 4,
            _ => 5,
        }
    }
}

pub(crate) fn binary(op: BinOp, x: f64, y: f64) -> Result<f64, ExprError> {
    Ok(match op {
        BinOp::Add => x + y,
        BinOp::Sub => x - y,
        BinOp::Mul => x * y,
        BinOp::Div => {
            if y == 0.0 {
                return Err(ExprError::Domain {
                    node: "/".into(),
                    value: y,
                });
            }
            x / y
        }
    })
}

pub(crate) fn power(base: f64, k: f64) -> Result<f64, ExprError> {
    let integral = k.fract() == 0.0 && k.abs() <= i32::MAX as f64;
    if (!integral && base < 0.0) || (k < 0.0 && base == 0.0) {
        return Err(ExprError::Domain {
            node: "^".into(),
            value: base,
        });
    }
    Ok(if integral {
        base.powi(k as i32)
    } else {
        base.powf(k)
    })
}

fn write_number(f: &mut fmt::Formatter<'_>, value: f64) -> fmt::Result {
    if value.is_sign_negative() {
        write!(f, "(-{})", -value)
    } else {
        write!(f, "{value}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool| {
            if parens {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self.node() {
            Node::Const(c) => write_number(f, *c),
            Node::Var(v) => f.write_str(v),
            Node::Neg(e) => {
                f.write_str("-")?;
                // `-(c)` keeps a negated literal distinct from the constant `(-c)`
                child(f, e, e.precedence() < 3 || e.as_const().is_some())
            }
            Node::Call(func, e) => write!(f, "{}({e})", func.name()),
            Node::Binary(op, a, b) => {
                let p = op.precedence();
                child(f, a, a.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                child(f, b, b.precedence() <= p)
            }
            Node::Pow(b, k) => {
                child(f, b, b.precedence() <= 4)?;
                f.write_str("^")?;
                write_number(f, *k)
            }
        }
    }
}

/// Ordered variable bindings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bindings(Vec<(String, f64)>);

impl Bindings {
    pub fn new() -> Self {
        Bindings(Vec::new())
    }

    /// Binds `name`, replacing an earlier binding of the same name.
    pub fn set(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        let name = name.into();
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name, value)),
        }
        self
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(n, v)| (n.as_str(), *v))
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for Bindings {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        let mut b = Bindings::new();
        for (n, v) in iter {
            b.set(n, v);
        }
        b
    }
}
