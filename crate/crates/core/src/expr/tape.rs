use super::{binary, power, BinOp, Expr, ExprError, Func, Node};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Const(f64),
    Slot(usize),
    Neg,
    Call(Func),
    Binary(BinOp),
    Pow(f64),
}

/// An expression compiled to postfix form over positional variable slots.
///
/// Produces bit-identical results to [`Expr::evaluate`] with the same values,
/// since both perform the same floating-point operations in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct Tape {
    ops: Vec<Op>,
    depth: usize,
}

impl Tape {
    /// Compiles `expr`, resolving each variable to its index in `slots`.
    pub fn compile(expr: &Expr, slots: &[String]) -> Result<Tape, ExprError> {
        let mut ops = Vec::new();
        emit(expr, slots, &mut ops)?;
        let mut depth = 0usize;
        let mut max = 0usize;
        for op in &ops {
            match op {
                Op::Const(_) | Op::Slot(_) => depth += 1,
                Op::Binary(_) => depth -= 1,
                _ => {}
            }
            max = max.max(depth);
        }
        Ok(Tape { ops, depth: max })
    }

    pub fn eval(&self, values: &[f64]) -> Result<f64, ExprError> {
        let mut stack = Vec::with_capacity(self.depth);
        self.eval_with(values, &mut stack)
    }

    /// Evaluates using a caller-provided scratch stack.
    pub fn eval_with(&self, values: &[f64], stack: &mut Vec<f64>) -> Result<f64, ExprError> {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Const(c) => stack.push(c),
                Op::Slot(i) => stack.push(values[i]),
                Op::Neg => {
                    let top = stack.last_mut().expect("tape underflow");
                    *top = -*top;
                }
                Op::Call(f) => {
                    let top = stack.last_mut().expect("tape underflow");
                    *top = f.apply(*top)?;
                }
                Op::Binary(b) => {
                    let y = stack.pop().expect("tape underflow");
                    let top = stack.last_mut().expect("tape underflow");
                    *top = binary(b, *top, y)?;
                }
                Op::Pow(k) => {
                    let top = stack.last_mut().expect("tape underflow");
                    *top = power(*top, k)?;
                }
            }
        }
        Ok(stack[0])
    }
}

fn emit(e: &Expr, slots: &[String], ops: &mut Vec<Op>) -> Result<(), ExprError> {
    match e.node() {
        Node::Const(c) => ops.push(Op::Const(*c)),
        Node::Var(v) => {
            let i = slots
                .iter()
                .position(|s| s == v)
                .ok_or_else(|| ExprError::UnboundVariable(v.clone()))?;
            ops.push(Op::Slot(i));
        }
        Node::Neg(a) => {
            emit(a, slots, ops)?;
            ops.push(Op::Neg);
        }
        Node::Call(f, a) => {
            emit(a, slots, ops)?;
            ops.push(Op::Call(*f));
        }
        Node::Binary(op, a, b) => {
            emit(a, slots, ops)?;
            emit(b, slots, ops)?;
            ops.push(Op::Binary(*op));
        }
        Node::Pow(a, k) => {
            emit(a, slots, ops)?;
            ops.push(Op::Pow(*k));
        }
    }
    Ok(())
}
