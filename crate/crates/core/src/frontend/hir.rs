//! Typed, name-resolved program representation consumed by the
//! interpreter. Every expression carries its declared type.

use std::rc::Rc;

use crate::diag::Span;
use crate::runtime::{FuncId, Value};
use crate::types::{GuestType, Signature, TypeExpr};

pub type LocalId = usize;
pub type GlobalId = usize;
pub type StrId = usize;
pub type TypeDescId = usize;

#[derive(Debug)]
pub struct Program {
    /// Source file names indexed by `Span::file`.
    pub files: Vec<String>,
    pub functions: Vec<Rc<Function>>,
    pub globals: Vec<Global>,
    /// String literal contents including the terminating NUL.
    pub strings: Vec<Rc<[u8]>>,
    pub type_descs: Vec<Rc<TypeExpr>>,
    pub main: Option<FuncId>,
}

impl Program {
    pub fn function_named(&self, name: &str) -> Option<FuncId> {
        self.functions.iter().position(|f| &*f.name == name)
    }
}

/// A file-scope variable or a `static` local. Both live in STATIC
/// storage; static locals are initialized when their declaration is
/// first reached.
#[derive(Debug)]
pub struct Global {
    pub name: String,
    pub ty: GuestType,
    pub init: Vec<InitItem>,
    pub is_local_static: bool,
    pub span: Span,
}

/// One store performed by an initializer, at a byte offset of the object.
#[derive(Debug)]
pub struct InitItem {
    pub offset: u64,
    pub value: Expr,
}

#[derive(Debug)]
pub struct LocalVar {
    pub name: String,
    pub ty: GuestType,
}

#[derive(Debug)]
pub struct Function {
    pub name: Rc<str>,
    pub sig: Rc<Signature>,
    /// Parameters occupy local slots `0..sig.params.len()`.
    pub locals: Vec<LocalVar>,
    pub body: Option<Vec<Stmt>>,
    pub span: Span,
    pub from_prelude: bool,
}

impl Function {
    pub fn ty(&self) -> GuestType {
        GuestType::Function(self.sig.clone())
    }
}

#[derive(Debug)]
pub enum Stmt {
    Expr(Expr),
    /// A local declaration: allocates the slot's object on first reach,
    /// then performs the initializer stores (after zeroing when `zero`).
    Local {
        id: LocalId,
        init: Vec<InitItem>,
        zero: bool,
        span: Span,
    },
    StaticLocal(GlobalId),
    Block(Vec<Stmt>),
    If(Expr, Box<Stmt>, Option<Box<Stmt>>),
    While(Expr, Box<Stmt>),
    DoWhile(Box<Stmt>, Expr),
    For(Vec<Stmt>, Option<Expr>, Option<Expr>, Box<Stmt>),
    Return(Option<Expr>, Span),
    Break,
    Continue,
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub ty: GuestType,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Shl,
    Shr,
    BitAnd,
    BitOr,
    BitXor,
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Ne,
}

impl ArithOp {
    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            ArithOp::Lt | ArithOp::Gt | ArithOp::Le | ArithOp::Ge | ArithOp::Eq | ArithOp::Ne
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnOp {
    Neg,
    BitNot,
    Not,
}

#[derive(Clone, Debug)]
pub enum Callee {
    Direct(FuncId),
    Indirect(Box<Expr>),
}

/// Operations implemented by the host rather than by guest code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    SizeLeftRaw,
    SizeRightRaw,
    Location,
    TryCast,
    CountVarargs,
    GetVarargRaw,
    GetVararg,
    VaStart,
    VaEnd,
    VaCopy,
    Abort,
    Exit,
    HostPutchar,
    HostGetchar,
    HostMalloc,
    HostFree,
    HostMemcpy,
    HostMemset,
    HostFmtDouble,
    VaCount,
    VaPeek,
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Const(Value),
    // Lvalues.
    Str(StrId),
    Local(LocalId),
    Global(GlobalId),
    /// Function designator; only appears under `AddrOf` or as a callee.
    Func(FuncId),
    Deref(Box<Expr>),
    Member(Box<Expr>, u64),
    // Rvalues.
    Load(Box<Expr>),
    /// Address of an lvalue, also used for array and function decay.
    AddrOf(Box<Expr>),
    Cast(Box<Expr>),
    Unary(UnOp, Box<Expr>),
    /// Operands are already converted to their common type.
    Binary(ArithOp, Box<Expr>, Box<Expr>),
    /// Pointer plus integer, scaled by the element size in bytes.
    PtrAdd(Box<Expr>, Box<Expr>, i64),
    /// Pointer difference divided by the element size.
    PtrDiff(Box<Expr>, Box<Expr>, i64),
    PtrCmp(ArithOp, Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Assign(Box<Expr>, Box<Expr>),
    /// `target op= rhs` computed in `op_ty`, converted back to the target
    /// type. Pointer targets use `scale` (element size) with Add/Sub.
    CompoundAssign {
        op: ArithOp,
        target: Box<Expr>,
        rhs: Box<Expr>,
        op_ty: GuestType,
        scale: Option<i64>,
    },
    /// `++`/`--`; `delta` is in elements for pointers and units otherwise.
    IncDec {
        target: Box<Expr>,
        delta: i64,
        post: bool,
        scale: Option<i64>,
    },
    Cond(Box<Expr>, Box<Expr>, Box<Expr>),
    Call {
        callee: Callee,
        args: Vec<Expr>,
    },
    Builtin(Builtin, Vec<Expr>),
    TypeDesc(TypeDescId),
    Comma(Box<Expr>, Box<Expr>),
    VaArg(Box<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind, ty: GuestType, span: Span) -> Self {
        Expr { kind, ty, span }
    }

    pub fn is_lvalue(&self) -> bool {
        matches!(
            self.kind,
            ExprKind::Str(_)
                | ExprKind::Local(_)
                | ExprKind::Global(_)
                | ExprKind::Deref(_)
                | ExprKind::Member(..)
        )
    }
}
