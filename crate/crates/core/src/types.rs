//! Guest types, struct layouts, and the run-time type expressions handed
//! out by the `type()` operator.

use std::cell::OnceCell;
use std::fmt;
use std::rc::Rc;

pub const CHAR_SIZE: u64 = 1;
pub const INT_SIZE: u64 = 4;
pub const LONG_SIZE: u64 = 8;
pub const DOUBLE_SIZE: u64 = 8;
pub const POINTER_SIZE: u64 = 8;
pub const VA_LIST_SIZE: u64 = 24;

/// Declared type of a guest expression or object.
#[derive(Clone)]
pub enum GuestType {
    Void,
    Char,
    Int,
    UInt,
    Long,
    ULong,
    Double,
    Pointer(Rc<GuestType>),
    Array(Rc<GuestType>, u64),
    Struct(Rc<StructDef>),
    Function(Rc<Signature>),
    /// Opaque `va_list`; holds a shared view of the caller's variadic tail.
    VaList,
}

/// Coarse classification shared with [`TypeExpr`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeKind {
    Char,
    Int,
    Long,
    Double,
    Pointer,
    Array,
    Struct,
    Function,
    Void,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    pub ret: GuestType,
    /// Fixed parameters only; the variadic tail is the `variadic` flag.
    pub params: Vec<GuestType>,
    pub variadic: bool,
}

impl Signature {
    /// Kind-level match: same parameter count, same parameter kinds, same
    /// return kind, same variadic flag.
    pub fn matches_kinds(&self, other: &Signature) -> bool {
        self.variadic == other.variadic
            && self.ret.kind() == other.ret.kind()
            && self.params.len() == other.params.len()
            && self
                .params
                .iter()
                .zip(&other.params)
                .all(|(a, b)| a.kind() == b.kind())
    }
}

#[derive(Clone, Debug)]
pub struct Field {
    pub name: String,
    pub ty: GuestType,
    pub offset: u64,
}

#[derive(Debug)]
pub struct StructBody {
    pub fields: Vec<Field>,
    pub size: u64,
    pub align: u64,
}

/// A struct definition. Identity is pointer identity of the `Rc`; the body
/// is filled in once the definition is complete, which lets a struct hold
/// pointers to itself.
pub struct StructDef {
    pub name: String,
    pub id: u32,
    body: OnceCell<StructBody>,
    layout: OnceCell<Rc<Layout>>,
}

impl StructDef {
    pub fn new(name: impl Into<String>, id: u32) -> Self {
        StructDef {
            name: name.into(),
            id,
            body: OnceCell::new(),
            layout: OnceCell::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.body.get().is_some()
    }

    pub fn body(&self) -> Option<&StructBody> {
        self.body.get()
    }

    /// Lays out `fields` with natural alignment. Returns an error message on
    /// duplicate field names or incomplete field types.
    pub fn complete(&self, fields: Vec<(String, GuestType)>) -> Result<(), String> {
        if self.is_complete() {
            return Err(format!("redefinition of struct {}", self.name));
        }
        let mut offset = 0u64;
        let mut align = 1u64;
        let mut laid = Vec::with_capacity(fields.len());
        for (name, ty) in fields {
            if laid.iter().any(|f: &Field| f.name == name) {
                return Err(format!("duplicate field `{name}` in struct {}", self.name));
            }
            let size = ty
                .size()
                .ok_or_else(|| format!("field `{name}` has incomplete type {ty}"))?;
            let a = ty.align();
            offset = offset.div_ceil(a) * a;
            laid.push(Field { name, ty, offset });
            offset += size;
            align = align.max(a);
        }
        let size = offset.div_ceil(align) * align;
        let _ = self.body.set(StructBody {
            fields: laid,
            size,
            align,
        });
        Ok(())
    }

    pub fn field(&self, name: &str) -> Option<&Field> {
        self.body()?.fields.iter().find(|f| f.name == name)
    }

    fn layout(self: &Rc<Self>) -> Rc<Layout> {
        self.layout
            .get_or_init(|| {
                let mut leaves = Vec::new();
                GuestType::Struct(self.clone()).collect_leaves(0, &mut leaves);
                Rc::new(Layout {
                    size: self.body().map_or(0, |b| b.size),
                    leaves,
                })
            })
            .clone()
    }
}

impl fmt::Debug for StructDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "struct {}#{}", self.name, self.id)
    }
}

/// One scalar slot inside an element: its byte offset and declared type.
#[derive(Clone, Debug)]
pub struct Leaf {
    pub offset: u64,
    pub ty: GuestType,
}

/// Flattened scalar layout of one element type.
#[derive(Clone, Debug)]
pub struct Layout {
    pub size: u64,
    pub leaves: Vec<Leaf>,
}

impl Layout {
    /// Index of the leaf that starts exactly at `offset`.
    pub fn leaf_at(&self, offset: u64) -> Option<usize> {
        self.leaves.binary_search_by_key(&offset, |l| l.offset).ok()
    }
}

/// Storage class of a scalar leaf: what an access must agree on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Storage {
    I8,
    I32,
    I64,
    F64,
    Ptr,
    VaList,
}

impl GuestType {
    pub fn pointer_to(t: GuestType) -> GuestType {
        GuestType::Pointer(Rc::new(t))
    }

    pub fn void_ptr() -> GuestType {
        GuestType::pointer_to(GuestType::Void)
    }

    pub fn char_ptr() -> GuestType {
        GuestType::pointer_to(GuestType::Char)
    }

    pub fn kind(&self) -> TypeKind {
        match self {
            GuestType::Void => TypeKind::Void,
            GuestType::Char => TypeKind::Char,
            GuestType::Int | GuestType::UInt => TypeKind::Int,
            GuestType::Long | GuestType::ULong => TypeKind::Long,
            GuestType::Double => TypeKind::Double,
            GuestType::Pointer(_) => TypeKind::Pointer,
            GuestType::Array(..) => TypeKind::Array,
            GuestType::Struct(_) | GuestType::VaList => TypeKind::Struct,
            GuestType::Function(_) => TypeKind::Function,
        }
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            GuestType::Void | GuestType::Function(_) => None,
            GuestType::Char => Some(CHAR_SIZE),
            GuestType::Int | GuestType::UInt => Some(INT_SIZE),
            GuestType::Long | GuestType::ULong => Some(LONG_SIZE),
            GuestType::Double => Some(DOUBLE_SIZE),
            GuestType::Pointer(_) => Some(POINTER_SIZE),
            GuestType::VaList => Some(VA_LIST_SIZE),
            GuestType::Array(elem, n) => elem.size()?.checked_mul(*n),
            GuestType::Struct(def) => def.body().map(|b| b.size),
        }
    }

    pub fn align(&self) -> u64 {
        match self {
            GuestType::Char => 1,
            GuestType::Int | GuestType::UInt => 4,
            GuestType::Array(elem, _) => elem.align(),
            GuestType::Struct(def) => def.body().map_or(1, |b| b.align),
            _ => 8,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(
            self,
            GuestType::Char | GuestType::Int | GuestType::UInt | GuestType::Long | GuestType::ULong
        )
    }

    pub fn is_unsigned(&self) -> bool {
        matches!(self, GuestType::UInt | GuestType::ULong)
    }

    pub fn is_arithmetic(&self) -> bool {
        self.is_integer() || matches!(self, GuestType::Double)
    }

    pub fn is_pointer(&self) -> bool {
        matches!(self, GuestType::Pointer(_))
    }

    pub fn is_scalar(&self) -> bool {
        self.is_arithmetic() || self.is_pointer()
    }

    pub fn is_void(&self) -> bool {
        matches!(self, GuestType::Void)
    }

    pub fn pointee(&self) -> Option<&GuestType> {
        match self {
            GuestType::Pointer(t) => Some(t),
            _ => None,
        }
    }

    /// Signature of a function type or of a pointer to one.
    pub fn signature(&self) -> Option<&Rc<Signature>> {
        match self {
            GuestType::Function(sig) => Some(sig),
            GuestType::Pointer(t) => match &**t {
                GuestType::Function(sig) => Some(sig),
                _ => None,
            },
            _ => None,
        }
    }

    /// Storage class for scalar leaf types.
    pub fn storage(&self) -> Option<Storage> {
        Some(match self {
            GuestType::Char => Storage::I8,
            GuestType::Int | GuestType::UInt => Storage::I32,
            GuestType::Long | GuestType::ULong => Storage::I64,
            GuestType::Double => Storage::F64,
            GuestType::Pointer(_) => Storage::Ptr,
            GuestType::VaList => Storage::VaList,
            _ => return None,
        })
    }

    /// True for types stored as a single leaf.
    pub fn is_leaf(&self) -> bool {
        self.storage().is_some()
    }

    fn collect_leaves(&self, base: u64, out: &mut Vec<Leaf>) {
        match self {
            GuestType::Array(elem, n) => {
                let step = elem.size().unwrap_or(0);
                for i in 0..*n {
                    elem.collect_leaves(base + i * step, out);
                }
            }
            GuestType::Struct(def) => {
                if let Some(body) = def.body() {
                    for f in &body.fields {
                        f.ty.collect_leaves(base + f.offset, out);
                    }
                }
            }
            t if t.is_leaf() => out.push(Leaf {
                offset: base,
                ty: t.clone(),
            }),
            _ => {}
        }
    }

    /// Flattened scalar layout of one value of this type.
    pub fn layout(&self) -> Rc<Layout> {
        match self {
            GuestType::Struct(def) => def.layout(),
            _ => {
                let mut leaves = Vec::new();
                self.collect_leaves(0, &mut leaves);
                Rc::new(Layout {
                    size: self.size().unwrap_or(0),
                    leaves,
                })
            }
        }
    }

    /// Strips (possibly nested) array wrappers.
    pub fn innermost_element(&self) -> &GuestType {
        match self {
            GuestType::Array(elem, _) => elem.innermost_element(),
            t => t,
        }
    }

    /// Run-time type expression mirroring this declared type. A pointer to
    /// a function is described as the function itself, matching how C uses
    /// function designators and function pointers interchangeably.
    pub fn to_type_expr(&self) -> TypeExpr {
        match self {
            GuestType::Pointer(t) if matches!(**t, GuestType::Function(_)) => {
                t.type_expr_inner(&mut Vec::new())
            }
            t => t.type_expr_inner(&mut Vec::new()),
        }
    }

    fn type_expr_inner(&self, visiting: &mut Vec<u32>) -> TypeExpr {
        match self {
            GuestType::Pointer(t) => {
                TypeExpr::node(TypeKind::Pointer, vec![t.type_expr_inner(visiting)])
            }
            GuestType::Array(t, n) => TypeExpr {
                array_length: *n,
                ..TypeExpr::node(TypeKind::Array, vec![t.type_expr_inner(visiting)])
            },
            GuestType::Function(sig) => {
                let mut children = vec![sig.ret.type_expr_inner(visiting)];
                children.extend(sig.params.iter().map(|p| p.type_expr_inner(visiting)));
                TypeExpr {
                    variadic: sig.variadic,
                    ..TypeExpr::node(TypeKind::Function, children)
                }
            }
            GuestType::Struct(def) => {
                // A struct already being described becomes a childless
                // reference, which keeps self-referential structs finite.
                let children = if visiting.contains(&def.id) {
                    Vec::new()
                } else {
                    visiting.push(def.id);
                    let c = def
                        .body()
                        .map(|b| {
                            b.fields
                                .iter()
                                .map(|f| f.ty.type_expr_inner(visiting))
                                .collect()
                        })
                        .unwrap_or_default();
                    visiting.pop();
                    c
                };
                TypeExpr {
                    struct_ref: Some(StructRef {
                        id: def.id,
                        name: def.name.clone(),
                    }),
                    ..TypeExpr::node(TypeKind::Struct, children)
                }
            }
            GuestType::VaList => TypeExpr {
                struct_ref: Some(StructRef {
                    id: u32::MAX,
                    name: "va_list".into(),
                }),
                ..TypeExpr::node(TypeKind::Struct, Vec::new())
            },
            t => TypeExpr::node(t.kind(), Vec::new()),
        }
    }

    /// Structural equality with struct identity by definition.
    pub fn same_as(&self, other: &GuestType) -> bool {
        match (self, other) {
            (GuestType::Pointer(a), GuestType::Pointer(b)) => a.same_as(b),
            (GuestType::Array(a, n), GuestType::Array(b, m)) => n == m && a.same_as(b),
            (GuestType::Struct(a), GuestType::Struct(b)) => Rc::ptr_eq(a, b),
            (GuestType::Function(a), GuestType::Function(b)) => {
                a.variadic == b.variadic
                    && a.ret.same_as(&b.ret)
                    && a.params.len() == b.params.len()
                    && a.params.iter().zip(&b.params).all(|(x, y)| x.same_as(y))
            }
            (a, b) => std::mem::discriminant(a) == std::mem::discriminant(b),
        }
    }
}

impl PartialEq for GuestType {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Debug for GuestType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GuestType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GuestType::Void => f.write_str("void"),
            GuestType::Char => f.write_str("char"),
            GuestType::Int => f.write_str("int"),
            GuestType::UInt => f.write_str("unsigned int"),
            GuestType::Long => f.write_str("long"),
            GuestType::ULong => f.write_str("unsigned long"),
            GuestType::Double => f.write_str("double"),
            GuestType::VaList => f.write_str("va_list"),
            GuestType::Pointer(t) => write!(f, "{t}*"),
            GuestType::Array(t, n) => write!(f, "{t}[{n}]"),
            GuestType::Struct(def) => write!(f, "struct {}", def.name),
            GuestType::Function(sig) => {
                write!(f, "{}(", sig.ret)?;
                for (i, p) in sig.params.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                if sig.variadic {
                    f.write_str(if sig.params.is_empty() {
                        "..."
                    } else {
                        ", ..."
                    })?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructRef {
    pub id: u32,
    pub name: String,
}

/// Recursive run-time type description (the value of `type(expr)`).
///
/// Children: pointer target, array element, function return type followed
/// by parameter types, or struct field types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeExpr {
    pub kind: TypeKind,
    pub children: Vec<TypeExpr>,
    pub array_length: u64,
    pub variadic: bool,
    pub struct_ref: Option<StructRef>,
}

impl TypeExpr {
    pub fn node(kind: TypeKind, children: Vec<TypeExpr>) -> Self {
        TypeExpr {
            kind,
            children,
            array_length: 0,
            variadic: false,
            struct_ref: None,
        }
    }

    pub fn scalar(kind: TypeKind) -> Self {
        TypeExpr::node(kind, Vec::new())
    }

    pub fn pointer(target: TypeExpr) -> Self {
        TypeExpr::node(TypeKind::Pointer, vec![target])
    }

    pub fn function(ret: TypeExpr, params: Vec<TypeExpr>, variadic: bool) -> Self {
        let mut children = vec![ret];
        children.extend(params);
        TypeExpr {
            variadic,
            ..TypeExpr::node(TypeKind::Function, children)
        }
    }

    pub fn target(&self) -> Option<&TypeExpr> {
        match self.kind {
            TypeKind::Pointer | TypeKind::Array => self.children.first(),
            _ => None,
        }
    }

    pub fn size(&self) -> Option<u64> {
        Some(match self.kind {
            TypeKind::Char => CHAR_SIZE,
            TypeKind::Int => INT_SIZE,
            TypeKind::Long => LONG_SIZE,
            TypeKind::Double => DOUBLE_SIZE,
            TypeKind::Pointer => POINTER_SIZE,
            TypeKind::Array => self.children.first()?.size()? * self.array_length,
            _ => return None,
        })
    }

    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(TypeExpr::node_count)
            .sum::<usize>()
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TypeKind::Pointer => write!(f, "pointer({})", self.children[0]),
            TypeKind::Array => write!(f, "array[{}]({})", self.array_length, self.children[0]),
            TypeKind::Function => {
                f.write_str("function(")?;
                for (i, c) in self.children[1..].iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                if self.variadic {
                    f.write_str(", ...")?;
                }
                write!(f, ")->{}", self.children[0])
            }
            TypeKind::Struct => write!(
                f,
                "struct {}",
                self.struct_ref.as_ref().map_or("?", |s| s.name.as_str())
            ),
            k => write!(f, "{}", format!("{k:?}").to_lowercase()),
        }
    }
}
