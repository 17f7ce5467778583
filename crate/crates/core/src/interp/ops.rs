//! Scalar conversions and arithmetic on guest values.

use crate::diag::DiagnosticKind;
use crate::frontend::hir::{ArithOp, UnOp};
use crate::runtime::{Value, Violation};
use crate::types::GuestType;

/// Truncates an integer to the width and signedness of `ty`.
pub fn normalize(v: i64, ty: &GuestType) -> i64 {
    match ty {
        GuestType::Char => v as i8 as i64,
        GuestType::Int => v as i32 as i64,
        GuestType::UInt => v as u32 as i64,
        _ => v,
    }
}

/// Converts a scalar value between declared types.
pub fn convert(v: Value, from: &GuestType, to: &GuestType) -> Value {
    match to {
        GuestType::Void => Value::Void,
        GuestType::Double => match v {
            Value::Int(i) if matches!(from, GuestType::ULong) => Value::Float(i as u64 as f64),
            Value::Int(i) => Value::Float(i as f64),
            other => other,
        },
        t if t.is_integer() => match v {
            Value::Float(f) => {
                let i = if t.is_unsigned() && f >= 0.0 {
                    f as u64 as i64
                } else {
                    f as i64
                };
                Value::Int(normalize(i, t))
            }
            Value::Int(i) => Value::Int(normalize(i, t)),
            Value::Ptr(p) => Value::Int(i64::from(!p.is_null())),
            other => other,
        },
        _ => v,
    }
}

/// Bit width of an integer type after promotion.
fn width(ty: &GuestType) -> u32 {
    match ty {
        GuestType::Long | GuestType::ULong => 64,
        _ => 32,
    }
}

/// Applies `op` to operands already converted to `ty` (for shifts, `ty`
/// is the promoted left operand type). Comparisons yield an int 0 or 1.
pub fn binary(op: ArithOp, a: &Value, b: &Value, ty: &GuestType) -> Result<Value, Violation> {
    if let GuestType::Double = ty {
        let (x, y) = (a.as_float(), b.as_float());
        let r = match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => x / y,
            ArithOp::Lt => return Ok(bool_value(x < y)),
            ArithOp::Gt => return Ok(bool_value(x > y)),
            ArithOp::Le => return Ok(bool_value(x <= y)),
            ArithOp::Ge => return Ok(bool_value(x >= y)),
            ArithOp::Eq => return Ok(bool_value(x == y)),
            ArithOp::Ne => return Ok(bool_value(x != y)),
            _ => {
                return Err(Violation::new(
                    DiagnosticKind::TypeViolation,
                    format!("{op:?} on double operands"),
                ))
            }
        };
        return Ok(Value::Float(r));
    }
    let (x, y) = (a.as_int(), b.as_int());
    let unsigned64 = matches!(ty, GuestType::ULong);
    let r = match op {
        ArithOp::Add => x.wrapping_add(y),
        ArithOp::Sub => x.wrapping_sub(y),
        ArithOp::Mul => x.wrapping_mul(y),
        ArithOp::Div | ArithOp::Rem => {
            if y == 0 {
                return Err(Violation::new(
                    DiagnosticKind::ArithmeticError,
                    "integer division by zero",
                ));
            }
            match (op, unsigned64) {
                (ArithOp::Div, true) => ((x as u64) / (y as u64)) as i64,
                (ArithOp::Rem, true) => ((x as u64) % (y as u64)) as i64,
                (ArithOp::Div, false) => x.wrapping_div(y),
                _ => x.wrapping_rem(y),
            }
        }
        ArithOp::Shl => x.wrapping_shl((y as u32) & (width(ty) - 1)),
        ArithOp::Shr => {
            let n = (y as u32) & (width(ty) - 1);
            if unsigned64 {
                ((x as u64) >> n) as i64
            } else {
                x >> n
            }
        }
        ArithOp::BitAnd => x & y,
        ArithOp::BitOr => x | y,
        ArithOp::BitXor => x ^ y,
        cmp => {
            let ord = if unsigned64 {
                (x as u64).cmp(&(y as u64))
            } else {
                x.cmp(&y)
            };
            let r = match cmp {
                ArithOp::Lt => ord.is_lt(),
                ArithOp::Gt => ord.is_gt(),
                ArithOp::Le => ord.is_le(),
                ArithOp::Ge => ord.is_ge(),
                ArithOp::Eq => ord.is_eq(),
                _ => ord.is_ne(),
            };
            return Ok(bool_value(r));
        }
    };
    Ok(Value::Int(normalize(r, ty)))
}

pub fn unary(op: UnOp, a: &Value, ty: &GuestType) -> Value {
    match (op, a) {
        (UnOp::Not, v) => bool_value(!v.truthy()),
        (UnOp::Neg, Value::Float(f)) => Value::Float(-f),
        (UnOp::Neg, v) => Value::Int(normalize(v.as_int().wrapping_neg(), ty)),
        (UnOp::BitNot, v) => Value::Int(normalize(!v.as_int(), ty)),
    }
}

pub fn bool_value(b: bool) -> Value {
    Value::Int(i64::from(b))
}
