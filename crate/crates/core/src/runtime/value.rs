use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use super::ObjRef;
use crate::introspection::VarargsView;
use crate::types::GuestType;

pub type VaListRef = Rc<RefCell<VarargsView>>;

/// A guest address: the object it points into (or none for NULL) and a
/// signed byte offset. Arithmetic never fails; legality is checked on use.
#[derive(Clone, Default, PartialEq)]
pub struct GuestPointer {
    pub pointee: Option<ObjRef>,
    pub offset: i64,
}

impl GuestPointer {
    pub fn null() -> Self {
        GuestPointer::default()
    }

    pub fn to(obj: ObjRef, offset: i64) -> Self {
        GuestPointer {
            pointee: Some(obj),
            offset,
        }
    }

    pub fn is_null(&self) -> bool {
        self.pointee.is_none()
    }

    /// Pointer arithmetic in bytes. NULL stays NULL.
    pub fn offset_by(&self, delta: i64) -> GuestPointer {
        match &self.pointee {
            None => GuestPointer::null(),
            Some(o) => GuestPointer::to(o.clone(), self.offset.wrapping_add(delta)),
        }
    }

    pub fn same_object(&self, other: &GuestPointer) -> bool {
        match (&self.pointee, &other.pointee) {
            (Some(a), Some(b)) => a.same(b),
            (None, None) => true,
            _ => false,
        }
    }

    /// Total order used for relational comparisons: NULL first, then by
    /// object identity, then by offset.
    pub fn order_key(&self) -> (u64, i64) {
        (self.pointee.as_ref().map_or(0, ObjRef::id), self.offset)
    }
}

impl fmt::Debug for GuestPointer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pointee {
            None => f.write_str("NULL"),
            Some(o) => write!(f, "{o:?}+{}", self.offset),
        }
    }
}

/// A guest value. Integers of every width are kept as `i64` normalized to
/// the declared type (unsigned long keeps its bit pattern).
#[derive(Clone)]
pub enum Value {
    Int(i64),
    Float(f64),
    Ptr(GuestPointer),
    VaList(VaListRef),
    Aggregate(Rc<[Value]>),
    Void,
}

impl Value {
    pub fn zero(ty: &GuestType) -> Value {
        match ty {
            GuestType::Double => Value::Float(0.0),
            GuestType::Pointer(_) => Value::Ptr(GuestPointer::null()),
            GuestType::VaList => Value::VaList(Rc::new(RefCell::new(VarargsView::default()))),
            GuestType::Struct(_) | GuestType::Array(..) => {
                let layout = ty.layout();
                Value::Aggregate(layout.leaves.iter().map(|l| Value::zero(&l.ty)).collect())
            }
            GuestType::Void | GuestType::Function(_) => Value::Void,
            _ => Value::Int(0),
        }
    }

    /// The value of a scalar slot whose every byte is `c`.
    pub fn from_repeated_byte(ty: &GuestType, c: u8) -> Option<Value> {
        Some(match ty {
            GuestType::Char => Value::Int(c as i8 as i64),
            GuestType::Int => Value::Int(i32::from_ne_bytes([c; 4]) as i64),
            GuestType::UInt => Value::Int(u32::from_ne_bytes([c; 4]) as i64),
            GuestType::Long | GuestType::ULong => Value::Int(i64::from_ne_bytes([c; 8])),
            GuestType::Double => Value::Float(f64::from_ne_bytes([c; 8])),
            GuestType::Pointer(_) if c == 0 => Value::Ptr(GuestPointer::null()),
            _ => return None,
        })
    }

    pub fn as_int(&self) -> i64 {
        match self {
            Value::Int(i) => *i,
            Value::Float(f) => *f as i64,
            Value::Ptr(p) => i64::from(!p.is_null()),
            _ => 0,
        }
    }

    pub fn as_float(&self) -> f64 {
        match self {
            Value::Float(f) => *f,
            Value::Int(i) => *i as f64,
            _ => 0.0,
        }
    }

    pub fn as_ptr(&self) -> GuestPointer {
        match self {
            Value::Ptr(p) => p.clone(),
            _ => GuestPointer::null(),
        }
    }

    pub fn truthy(&self) -> bool {
        match self {
            Value::Int(i) => *i != 0,
            Value::Float(f) => *f != 0.0,
            Value::Ptr(p) => !p.is_null(),
            _ => false,
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Float(a), Value::Float(b)) => a.to_bits() == b.to_bits(),
            (Value::Ptr(a), Value::Ptr(b)) => a == b,
            (Value::VaList(a), Value::VaList(b)) => Rc::ptr_eq(a, b),
            (Value::Aggregate(a), Value::Aggregate(b)) => a == b,
            (Value::Void, Value::Void) => true,
            _ => false,
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) => write!(f, "{x:?}"),
            Value::Ptr(p) => write!(f, "{p:?}"),
            Value::VaList(v) => write!(f, "va_list({:?})", v.borrow()),
            Value::Aggregate(vs) => f.debug_list().entries(vs.iter()).finish(),
            Value::Void => f.write_str("void"),
        }
    }
}
