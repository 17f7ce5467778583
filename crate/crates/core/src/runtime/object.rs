use std::cell::{Ref, RefCell, RefMut};
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use super::{FuncId, Value};
use crate::types::{GuestType, Layout, TypeExpr};

/// Logical memory location of an object. Guest-visible numbering:
/// INVALID=0, AUTOMATIC=1, DYNAMIC=2, STATIC=3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocationKind {
    Invalid = 0,
    Automatic = 1,
    Dynamic = 2,
    Static = 3,
}

impl LocationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LocationKind::Invalid => "INVALID",
            LocationKind::Automatic => "AUTOMATIC",
            LocationKind::Dynamic => "DYNAMIC",
            LocationKind::Static => "STATIC",
        }
    }

    pub fn code(self) -> i64 {
        self as i64
    }
}

#[derive(Debug)]
pub enum Payload {
    /// Dense scalar slots: `count` repetitions of `layout`.
    Typed {
        layout: Rc<Layout>,
        cells: Vec<Value>,
    },
    /// `malloc` memory: byte offset -> (type fixed by the first store, value).
    Untyped(BTreeMap<u64, (GuestType, Value)>),
    Function(FuncId),
    TypeDesc(Rc<TypeExpr>),
    /// Payload of an object whose location became INVALID.
    Released,
}

#[derive(Debug)]
pub struct ManagedObject {
    pub id: u64,
    pub element_type: GuestType,
    pub element_count: u64,
    pub byte_size: u64,
    pub location: LocationKind,
    pub payload: Payload,
}

impl ManagedObject {
    /// Ends the object's lifetime. INVALID is terminal.
    pub(crate) fn invalidate(&mut self) {
        self.location = LocationKind::Invalid;
        self.payload = Payload::Released;
    }

    pub fn function(&self) -> Option<FuncId> {
        match self.payload {
            Payload::Function(f) => Some(f),
            _ => None,
        }
    }

    pub fn type_desc(&self) -> Option<&Rc<TypeExpr>> {
        match &self.payload {
            Payload::TypeDesc(t) => Some(t),
            _ => None,
        }
    }
}

/// Shared handle to a managed object; equality is identity.
#[derive(Clone)]
pub struct ObjRef(Rc<RefCell<ManagedObject>>);

impl ObjRef {
    pub(crate) fn new(obj: ManagedObject) -> Self {
        ObjRef(Rc::new(RefCell::new(obj)))
    }

    pub fn borrow(&self) -> Ref<'_, ManagedObject> {
        self.0.borrow()
    }

    pub(crate) fn borrow_mut(&self) -> RefMut<'_, ManagedObject> {
        self.0.borrow_mut()
    }

    pub fn id(&self) -> u64 {
        self.0.borrow().id
    }

    pub fn location(&self) -> LocationKind {
        self.0.borrow().location
    }

    pub fn byte_size(&self) -> u64 {
        self.0.borrow().byte_size
    }

    pub fn same(&self, other: &ObjRef) -> bool {
        Rc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for ObjRef {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Debug for ObjRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = self.0.borrow();
        write!(f, "#{}({:?}, {}B)", o.id, o.location, o.byte_size)
    }
}
