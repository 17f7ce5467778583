//! Untyped syntax tree produced by the parser.
//!
//! Equality ignores source spans so that a re-parsed pretty-print compares
//! equal to the original tree.

use crate::diag::Span;

#[derive(Clone, Debug, PartialEq)]
pub struct TranslationUnit {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug)]
pub enum Item {
    /// `struct S { ... };` or a forward declaration `struct S;`.
    Struct(StructItem),
    /// Global variables (one declaration line, possibly several names).
    Globals(Declaration),
    Function(FunctionItem),
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Item::Struct(a), Item::Struct(b)) => a.name == b.name && a.fields == b.fields,
            (Item::Globals(a), Item::Globals(b)) => a == b,
            (Item::Function(a), Item::Function(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructItem {
    pub name: String,
    pub fields: Option<Vec<FieldDecl>>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldDecl {
    pub base: BaseType,
    pub declarators: Vec<Declarator>,
}

#[derive(Clone, Debug)]
pub struct FunctionItem {
    pub is_static: bool,
    pub base: BaseType,
    /// Always a function declarator at its core.
    pub declarator: Declarator,
    pub body: Option<Block>,
    pub span: Span,
}

impl PartialEq for FunctionItem {
    fn eq(&self, other: &Self) -> bool {
        self.is_static == other.is_static
            && self.base == other.base
            && self.declarator == other.declarator
            && self.body == other.body
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BaseType {
    Void,
    Char,
    Int,
    UInt,
    Long,
    ULong,
    Double,
    Struct(String),
    /// Builtin type names such as `size_t`, `FILE`, `va_list`, `Type`.
    Named(String),
}

/// C declarator syntax, innermost name at the leaf.
#[derive(Clone, Debug, PartialEq)]
pub enum Declarator {
    Name(Option<String>),
    Pointer(Box<Declarator>),
    Array(Box<Declarator>, Option<Box<Expr>>),
    Function(Box<Declarator>, Vec<Param>, bool),
}

impl Declarator {
    pub fn name(&self) -> Option<&str> {
        match self {
            Declarator::Name(n) => n.as_deref(),
            Declarator::Pointer(d) | Declarator::Array(d, _) | Declarator::Function(d, ..) => {
                d.name()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Param {
    pub base: BaseType,
    pub declarator: Declarator,
    pub span: Span,
}

impl PartialEq for Param {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.declarator == other.declarator
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeName {
    pub base: BaseType,
    pub declarator: Declarator,
}

#[derive(Clone, Debug)]
pub struct Declaration {
    pub is_static: bool,
    pub base: BaseType,
    pub vars: Vec<InitDeclarator>,
    pub span: Span,
}

impl PartialEq for Declaration {
    fn eq(&self, other: &Self) -> bool {
        self.is_static == other.is_static && self.base == other.base && self.vars == other.vars
    }
}

#[derive(Clone, Debug)]
pub struct InitDeclarator {
    pub declarator: Declarator,
    pub init: Option<Initializer>,
    pub span: Span,
}

impl PartialEq for InitDeclarator {
    fn eq(&self, other: &Self) -> bool {
        self.declarator == other.declarator && self.init == other.init
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Initializer {
    Expr(Expr),
    List(Vec<Initializer>),
}

pub type Block = Vec<Stmt>;

#[derive(Clone, Debug)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StmtKind {
    Decl(Declaration),
    Expr(Expr),
    Block(Block),
    If(Expr, Box<Stmt>, Option<Box<Stmt>>),
    While(Expr, Box<Stmt>),
    DoWhile(Box<Stmt>, Expr),
    /// `for (init; cond; step) body`; `init` is a declaration or an
    /// expression statement.
    For(Option<Box<Stmt>>, Option<Expr>, Option<Expr>, Box<Stmt>),
    Return(Option<Expr>),
    Break,
    Continue,
    Empty,
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Plus,
    Not,
    BitNot,
    Deref,
    AddrOf,
    PreInc,
    PreDec,
    PostInc,
    PostDec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Mul,
    Div,
    Rem,
    Add,
    Sub,
    Shl,
    Shr,
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Ne,
    BitAnd,
    BitXor,
    BitOr,
    And,
    Or,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Rem => "%",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Shl => "<<",
            BinaryOp::Shr => ">>",
            BinaryOp::Lt => "<",
            BinaryOp::Gt => ">",
            BinaryOp::Le => "<=",
            BinaryOp::Ge => ">=",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::BitAnd => "&",
            BinaryOp::BitXor => "^",
            BinaryOp::BitOr => "|",
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
        }
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem => 10,
            BinaryOp::Add | BinaryOp::Sub => 9,
            BinaryOp::Shl | BinaryOp::Shr => 8,
            BinaryOp::Lt | BinaryOp::Gt | BinaryOp::Le | BinaryOp::Ge => 7,
            BinaryOp::Eq | BinaryOp::Ne => 6,
            BinaryOp::BitAnd => 5,
            BinaryOp::BitXor => 4,
            BinaryOp::BitOr => 3,
            BinaryOp::And => 2,
            BinaryOp::Or => 1,
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinaryOp::Lt | BinaryOp::Gt | BinaryOp::Le | BinaryOp::Ge | BinaryOp::Eq | BinaryOp::Ne
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int {
        value: u64,
        unsigned: bool,
        long: bool,
    },
    Float(f64),
    Char(i64),
    Str(Vec<u8>),
    Ident(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    /// Plain (`None`) or compound assignment.
    Assign(Option<BinaryOp>, Box<Expr>, Box<Expr>),
    Cond(Box<Expr>, Box<Expr>, Box<Expr>),
    Call(Box<Expr>, Vec<Expr>),
    Index(Box<Expr>, Box<Expr>),
    /// `a.b` (false) or `a->b` (true).
    Member(Box<Expr>, String, bool),
    Cast(TypeName, Box<Expr>),
    SizeofType(TypeName),
    SizeofExpr(Box<Expr>),
    Comma(Box<Expr>, Box<Expr>),
    /// `va_arg(list, T)`: the only call form taking a type argument.
    VaArg(Box<Expr>, TypeName),
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }
}
