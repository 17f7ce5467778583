//! Name resolution, type checking, and lowering to the typed program.

use std::collections::HashMap;
use std::rc::Rc;

use super::ast::{self, BaseType, BinaryOp, Declarator, Initializer, StmtKind, UnaryOp};
use super::hir::*;
use super::FrontError;
use crate::diag::{DiagnosticKind, Span};
use crate::interp::ops;
use crate::runtime::{FuncId, GuestPointer, Value};
use crate::types::{GuestType, Signature, StructDef, TypeExpr};

type R<T> = Result<T, FrontError>;

fn sema_err<T>(span: Span, message: impl Into<String>) -> R<T> {
    Err(FrontError::new(DiagnosticKind::SemaError, span, message))
}

#[derive(Clone)]
enum Symbol {
    Local(LocalId),
    Global(GlobalId),
    Func(FuncId),
    Const(Value, GuestType),
}

struct FnSlot {
    name: Rc<str>,
    sig: Rc<Signature>,
    locals: Vec<LocalVar>,
    body: Option<Vec<Stmt>>,
    span: Span,
    from_prelude: bool,
    has_body: bool,
    first_use: Option<Span>,
}

struct FnCtx {
    sig: Rc<Signature>,
    locals: Vec<LocalVar>,
    scopes: Vec<HashMap<String, Symbol>>,
    loop_depth: usize,
}

/// Signature table for host-implemented operations: name, return type,
/// parameter types, and whether the name is reserved for the prelude.
struct BuiltinSpec {
    builtin: Builtin,
    ret: GuestType,
    params: Vec<GuestType>,
}

pub struct Analyzer {
    structs: HashMap<String, Rc<StructDef>>,
    next_struct_id: u32,
    type_def: Rc<StructDef>,
    scope: HashMap<String, Symbol>,
    functions: Vec<FnSlot>,
    globals: Vec<Global>,
    strings: Vec<Rc<[u8]>>,
    string_ids: HashMap<Vec<u8>, StrId>,
    type_descs: Vec<Rc<TypeExpr>>,
    cur: Option<FnCtx>,
    in_prelude: bool,
    /// Set while analyzing an expression in which `type()` may appear.
    type_ok: bool,
}

const RESERVED_PREFIX: &str = "__";

fn is_builtin_name(name: &str) -> bool {
    matches!(
        name,
        "_size_left"
            | "_size_right"
            | "location"
            | "try_cast"
            | "count_varargs"
            | "_get_vararg"
            | "get_vararg"
            | "va_start"
            | "va_end"
            | "va_copy"
            | "va_arg"
            | "abort"
            | "exit"
            | "type"
            | "__host_putchar"
            | "__host_getchar"
            | "__host_malloc"
            | "__host_free"
            | "__host_memcpy"
            | "__host_memset"
            | "__host_fmt_double"
            | "__va_count"
            | "__va_peek"
    )
}

impl Analyzer {
    pub fn new() -> Self {
        let type_def = Rc::new(StructDef::new("Type", 0));
        let _ = type_def.complete(Vec::new());
        let mut scope = HashMap::new();
        let int = |v: i64| Symbol::Const(Value::Int(v), GuestType::Int);
        let long = |v: i64| Symbol::Const(Value::Int(v), GuestType::Long);
        for (name, sym) in [
            (
                "NULL",
                Symbol::Const(Value::Ptr(GuestPointer::null()), GuestType::void_ptr()),
            ),
            ("true", int(1)),
            ("false", int(0)),
            ("EOF", int(-1)),
            ("EINVAL", int(22)),
            ("ERANGE", int(34)),
            ("ENOMEM", int(12)),
            ("EXIT_SUCCESS", int(0)),
            ("EXIT_FAILURE", int(1)),
            ("INT_MAX", int(i32::MAX as i64)),
            ("INT_MIN", int(i32::MIN as i64)),
            ("CHAR_MAX", int(127)),
            ("CHAR_MIN", int(-128)),
            ("LONG_MAX", long(i64::MAX)),
            ("LONG_MIN", long(i64::MIN)),
            ("SIZE_MAX", Symbol::Const(Value::Int(-1), GuestType::ULong)),
            ("INVALID", int(0)),
            ("AUTOMATIC", int(1)),
            ("DYNAMIC", int(2)),
            ("STATIC", int(3)),
        ] {
            scope.insert(name.to_string(), sym);
        }
        Analyzer {
            structs: HashMap::new(),
            next_struct_id: 1,
            type_def,
            scope,
            functions: Vec::new(),
            globals: Vec::new(),
            strings: Vec::new(),
            string_ids: HashMap::new(),
            type_descs: Vec::new(),
            cur: None,
            in_prelude: false,
            type_ok: false,
        }
    }

    /// Analyzes translation units in order (prelude first) into one program.
    pub fn analyze(
        mut self,
        units: &[(&ast::TranslationUnit, bool)],
        files: Vec<String>,
    ) -> R<Program> {
        // Struct definitions and function signatures first, so functions
        // may be called before their definition.
        for (unit, prelude) in units {
            self.in_prelude = *prelude;
            for item in &unit.items {
                match item {
                    ast::Item::Struct(s) => self.struct_item(s)?,
                    ast::Item::Function(f) => {
                        self.declare_function(f)?;
                    }
                    ast::Item::Globals(_) => {}
                }
            }
        }
        for (unit, prelude) in units {
            self.in_prelude = *prelude;
            for item in &unit.items {
                match item {
                    ast::Item::Struct(_) => {}
                    ast::Item::Globals(d) => self.global_declaration(d)?,
                    ast::Item::Function(f) => {
                        if f.body.is_some() {
                            self.function_body(f)?;
                        }
                    }
                }
            }
        }
        for f in &self.functions {
            if let (false, Some(span)) = (f.has_body, f.first_use) {
                return sema_err(
                    span,
                    format!("function `{}` is declared but never defined", f.name),
                );
            }
        }
        let functions: Vec<Rc<Function>> = self
            .functions
            .into_iter()
            .map(|f| {
                Rc::new(Function {
                    name: f.name,
                    sig: f.sig,
                    locals: f.locals,
                    body: f.body,
                    span: f.span,
                    from_prelude: f.from_prelude,
                })
            })
            .collect();
        let main = functions
            .iter()
            .position(|f| &*f.name == "main" && f.body.is_some());
        Ok(Program {
            files,
            functions,
            globals: self.globals,
            strings: self.strings,
            type_descs: self.type_descs,
            main,
        })
    }

    // ---- types ----

    fn struct_def(&mut self, name: &str) -> Rc<StructDef> {
        if let Some(d) = self.structs.get(name) {
            return d.clone();
        }
        let def = Rc::new(StructDef::new(name, self.next_struct_id));
        self.next_struct_id += 1;
        self.structs.insert(name.to_string(), def.clone());
        def
    }

    fn struct_item(&mut self, s: &ast::StructItem) -> R<()> {
        let def = self.struct_def(&s.name);
        let Some(fields) = &s.fields else {
            return Ok(());
        };
        let mut laid = Vec::new();
        for f in fields {
            let base = self.base_type(&f.base, s.span)?;
            for d in &f.declarators {
                let (name, ty, open_len) = self.apply_declarator(d, base.clone(), s.span)?;
                let Some(name) = name else {
                    return sema_err(s.span, "struct field without a name");
                };
                if open_len || matches!(ty, GuestType::Function(_) | GuestType::Void) {
                    return sema_err(s.span, format!("field `{name}` has invalid type {ty}"));
                }
                laid.push((name, ty));
            }
        }
        def.complete(laid).or_else(|m| sema_err(s.span, m))
    }

    fn base_type(&mut self, b: &BaseType, span: Span) -> R<GuestType> {
        Ok(match b {
            BaseType::Void => GuestType::Void,
            BaseType::Char => GuestType::Char,
            BaseType::Int => GuestType::Int,
            BaseType::UInt => GuestType::UInt,
            BaseType::Long => GuestType::Long,
            BaseType::ULong => GuestType::ULong,
            BaseType::Double => GuestType::Double,
            BaseType::Struct(name) => GuestType::Struct(self.struct_def(name)),
            BaseType::Named(n) => match n.as_str() {
                "size_t" | "rsize_t" => GuestType::ULong,
                "bool" => GuestType::Int,
                "va_list" => GuestType::VaList,
                "Type" => GuestType::Struct(self.type_def.clone()),
                "FILE" => GuestType::Struct(self.struct_def("FILE")),
                other => return sema_err(span, format!("unknown type name `{other}`")),
            },
        })
    }

    /// Applies a declarator to a base type. The flag reports an outermost
    /// array of unspecified length (`int a[] = ...`).
    fn apply_declarator(
        &mut self,
        d: &Declarator,
        t: GuestType,
        span: Span,
    ) -> R<(Option<String>, GuestType, bool)> {
        match d {
            Declarator::Name(n) => Ok((n.clone(), t, false)),
            Declarator::Pointer(inner) => {
                self.apply_declarator(inner, GuestType::pointer_to(t), span)
            }
            Declarator::Array(inner, len) => {
                if matches!(t, GuestType::Void | GuestType::Function(_)) || t.size().is_none() {
                    return sema_err(span, format!("array of invalid element type {t}"));
                }
                match len {
                    Some(e) => {
                        let n = self.const_int(e)?;
                        if n <= 0 {
                            return sema_err(
                                e.span,
                                format!("array length must be positive, found {n}"),
                            );
                        }
                        self.apply_declarator(inner, GuestType::Array(Rc::new(t), n as u64), span)
                    }
                    None => {
                        let (name, ty, _) =
                            self.apply_declarator(inner, GuestType::Array(Rc::new(t), 0), span)?;
                        let top = matches!(**inner, Declarator::Name(_));
                        if !top {
                            return sema_err(
                                span,
                                "array of unspecified length in a nested declarator",
                            );
                        }
                        Ok((name, ty, true))
                    }
                }
            }
            Declarator::Function(inner, params, variadic) => {
                if matches!(t, GuestType::Array(..) | GuestType::Function(_)) {
                    return sema_err(span, format!("function cannot return {t}"));
                }
                let mut ps = Vec::new();
                for p in params {
                    ps.push(self.param_type(p)?.1);
                }
                let sig = Signature {
                    ret: t,
                    params: ps,
                    variadic: *variadic,
                };
                self.apply_declarator(inner, GuestType::Function(Rc::new(sig)), span)
            }
        }
    }

    fn param_type(&mut self, p: &ast::Param) -> R<(Option<String>, GuestType)> {
        let base = self.base_type(&p.base, p.span)?;
        let (name, ty, _) = self.apply_declarator(&p.declarator, base, p.span)?;
        let ty = match ty {
            GuestType::Array(elem, _) => GuestType::Pointer(elem),
            f @ GuestType::Function(_) => GuestType::pointer_to(f),
            GuestType::Void => return sema_err(p.span, "parameter of type void"),
            t => t,
        };
        Ok((name, ty))
    }

    fn type_name(&mut self, t: &ast::TypeName, span: Span) -> R<GuestType> {
        let base = self.base_type(&t.base, span)?;
        let (_, ty, open_len) = self.apply_declarator(&t.declarator, base, span)?;
        if open_len {
            return sema_err(span, "array type without a length");
        }
        Ok(ty)
    }

    fn const_int(&mut self, e: &ast::Expr) -> R<i64> {
        let x = self.rvalue(e)?;
        if !x.ty.is_integer() {
            return sema_err(e.span, "array length must be an integer constant");
        }
        match const_eval(&x) {
            Some(Value::Int(v)) => Ok(v),
            _ => sema_err(e.span, "array length is not a constant expression"),
        }
    }

    // ---- declarations ----

    fn declare_function(&mut self, f: &ast::FunctionItem) -> R<FuncId> {
        let base = self.base_type(&f.base, f.span)?;
        let (name, ty, _) = self.apply_declarator(&f.declarator, base, f.span)?;
        let (Some(name), GuestType::Function(sig)) = (name, ty) else {
            return sema_err(f.span, "invalid function declarator");
        };
        if is_builtin_name(&name) {
            if f.body.is_none() {
                // Prototypes of host operations are accepted and ignored.
                return Ok(usize::MAX);
            }
            return sema_err(
                f.span,
                format!("`{name}` is reserved and cannot be defined"),
            );
        }
        if name.starts_with(RESERVED_PREFIX) && !self.in_prelude {
            return sema_err(
                f.span,
                format!("`{name}` is reserved for the standard library"),
            );
        }
        if let Some(Symbol::Func(id)) = self.scope.get(&name) {
            let id = *id;
            let slot = &mut self.functions[id];
            if !sig_same(&slot.sig, &sig) {
                return sema_err(f.span, format!("conflicting types for `{name}`"));
            }
            if f.body.is_some() {
                if slot.has_body {
                    return sema_err(f.span, format!("redefinition of `{name}`"));
                }
                slot.has_body = true;
                slot.span = f.span;
                slot.from_prelude = self.in_prelude;
                // Keep parameter names from the definition.
                slot.sig = sig;
            }
            return Ok(id);
        }
        if self.scope.contains_key(&name) {
            return sema_err(
                f.span,
                format!("`{name}` redeclared as a different kind of symbol"),
            );
        }
        let id = self.functions.len();
        self.functions.push(FnSlot {
            name: name.as_str().into(),
            sig,
            locals: Vec::new(),
            body: None,
            span: f.span,
            from_prelude: self.in_prelude,
            has_body: f.body.is_some(),
            first_use: None,
        });
        self.scope.insert(name, Symbol::Func(id));
        Ok(id)
    }

    fn global_declaration(&mut self, d: &ast::Declaration) -> R<()> {
        let base = self.base_type(&d.base, d.span)?;
        for v in &d.vars {
            let (name, ty, open_len) =
                self.apply_declarator(&v.declarator, base.clone(), v.span)?;
            let Some(name) = name else {
                return sema_err(v.span, "declaration without a name");
            };
            if is_builtin_name(&name) || (name.starts_with(RESERVED_PREFIX) && !self.in_prelude) {
                return sema_err(v.span, format!("`{name}` is reserved"));
            }
            if let GuestType::Function(_) = ty {
                return sema_err(v.span, "unexpected function declarator");
            }
            let ty = self.complete_array_type(ty, open_len, v.init.as_ref(), v.span)?;
            self.check_object_type(&ty, &name, v.span)?;
            if self.scope.contains_key(&name) {
                if let Some(Symbol::Global(g)) = self.scope.get(&name) {
                    let g = *g;
                    // A repeated tentative definition of the same type is fine.
                    if self.globals[g].ty == ty && v.init.is_none() {
                        continue;
                    }
                }
                return sema_err(v.span, format!("redefinition of `{name}`"));
            }
            let id = self.globals.len();
            self.globals.push(Global {
                name: name.clone(),
                ty: ty.clone(),
                init: Vec::new(),
                is_local_static: false,
                span: v.span,
            });
            self.scope.insert(name, Symbol::Global(id));
            if let Some(init) = &v.init {
                let mut items = Vec::new();
                self.init_items(&ty, init, 0, &mut items)?;
                self.globals[id].init = items;
            }
        }
        Ok(())
    }

    fn check_object_type(&self, ty: &GuestType, name: &str, span: Span) -> R<()> {
        if ty.size().is_none() || ty.is_void() {
            return sema_err(span, format!("variable `{name}` has incomplete type {ty}"));
        }
        Ok(())
    }

    fn complete_array_type(
        &self,
        ty: GuestType,
        open_len: bool,
        init: Option<&Initializer>,
        span: Span,
    ) -> R<GuestType> {
        if !open_len {
            return Ok(ty);
        }
        let GuestType::Array(elem, _) = &ty else {
            return Ok(ty);
        };
        let n = match init {
            Some(Initializer::List(items)) => items.len() as u64,
            Some(Initializer::Expr(ast::Expr {
                kind: ast::ExprKind::Str(s),
                ..
            })) if matches!(**elem, GuestType::Char) => s.len() as u64 + 1,
            _ => return sema_err(span, "array of unspecified length needs an initializer"),
        };
        if n == 0 {
            return sema_err(span, "zero-length array");
        }
        Ok(GuestType::Array(elem.clone(), n))
    }

    fn init_items(
        &mut self,
        ty: &GuestType,
        init: &Initializer,
        offset: u64,
        out: &mut Vec<InitItem>,
    ) -> R<()> {
        match (ty, init) {
            (GuestType::Array(elem, n), Initializer::Expr(e))
                if matches!(**elem, GuestType::Char) && matches!(e.kind, ast::ExprKind::Str(_)) =>
            {
                let ast::ExprKind::Str(bytes) = &e.kind else {
                    unreachable!()
                };
                if bytes.len() as u64 > *n {
                    return sema_err(
                        e.span,
                        format!("initializer string of {} bytes for char[{n}]", bytes.len()),
                    );
                }
                for (i, b) in bytes
                    .iter()
                    .chain(std::iter::once(&0u8))
                    .enumerate()
                    .take(*n as usize)
                {
                    out.push(InitItem {
                        offset: offset + i as u64,
                        value: Expr::new(
                            ExprKind::Const(Value::Int(*b as i8 as i64)),
                            GuestType::Char,
                            e.span,
                        ),
                    });
                }
                Ok(())
            }
            (GuestType::Array(elem, n), Initializer::List(items)) => {
                if items.len() as u64 > *n {
                    return sema_err(
                        self.init_span(init),
                        format!("too many initializers for {ty}"),
                    );
                }
                let es = elem.size().unwrap_or(0);
                for (i, item) in items.iter().enumerate() {
                    self.init_items(elem, item, offset + i as u64 * es, out)?;
                }
                Ok(())
            }
            (GuestType::Array(..), Initializer::Expr(e)) => {
                sema_err(e.span, "array initializer must be a brace-enclosed list")
            }
            (GuestType::Struct(def), Initializer::List(items)) => {
                let Some(body) = def.body() else {
                    return sema_err(self.init_span(init), "initializer for an incomplete struct");
                };
                if items.len() > body.fields.len() {
                    return sema_err(
                        self.init_span(init),
                        format!("too many initializers for struct {}", def.name),
                    );
                }
                let fields: Vec<(GuestType, u64)> = body
                    .fields
                    .iter()
                    .map(|f| (f.ty.clone(), f.offset))
                    .collect();
                for (item, (fty, foff)) in items.iter().zip(fields) {
                    self.init_items(&fty, item, offset + foff, out)?;
                }
                Ok(())
            }
            (_, Initializer::List(items)) => match items.as_slice() {
                [single] => self.init_items(ty, single, offset, out),
                _ => sema_err(
                    self.init_span(init),
                    format!("scalar {ty} needs exactly one initializer"),
                ),
            },
            (_, Initializer::Expr(e)) => {
                self.type_ok = true;
                let v = self.rvalue(e)?;
                let v = self.assign_convert(v, ty, "initialization")?;
                out.push(InitItem { offset, value: v });
                Ok(())
            }
        }
    }

    fn init_span(&self, init: &Initializer) -> Span {
        match init {
            Initializer::Expr(e) => e.span,
            Initializer::List(items) => items
                .first()
                .map_or_else(Span::default, |i| self.init_span(i)),
        }
    }

    fn function_body(&mut self, f: &ast::FunctionItem) -> R<()> {
        let Some(Symbol::Func(id)) = self.scope.get(f.declarator.name().unwrap_or("")).cloned()
        else {
            return sema_err(f.span, "function was not declared");
        };
        let sig = self.functions[id].sig.clone();
        let params = function_params(&f.declarator);
        let mut ctx = FnCtx {
            sig: sig.clone(),
            locals: Vec::new(),
            scopes: vec![HashMap::new()],
            loop_depth: 0,
        };
        for (p, ty) in params.iter().zip(&sig.params) {
            let name = p.declarator.name().map(str::to_string);
            let id = ctx.locals.len();
            ctx.locals.push(LocalVar {
                name: name.clone().unwrap_or_default(),
                ty: ty.clone(),
            });
            if let Some(n) = name {
                if ctx.scopes[0].insert(n.clone(), Symbol::Local(id)).is_some() {
                    return sema_err(p.span, format!("duplicate parameter `{n}`"));
                }
            }
        }
        self.cur = Some(ctx);
        let body = f.body.as_ref().expect("definition");
        let stmts = self.block(body, false);
        let ctx = self.cur.take().expect("function context");
        let stmts = stmts?;
        let slot = &mut self.functions[id];
        slot.locals = ctx.locals;
        slot.body = Some(stmts);
        Ok(())
    }

    // ---- statements ----

    fn ctx(&mut self) -> &mut FnCtx {
        self.cur.as_mut().expect("inside a function")
    }

    fn block(&mut self, stmts: &[ast::Stmt], new_scope: bool) -> R<Vec<Stmt>> {
        if new_scope {
            self.ctx().scopes.push(HashMap::new());
        }
        let out = stmts.iter().map(|s| self.stmt(s)).collect::<R<Vec<_>>>();
        if new_scope {
            self.ctx().scopes.pop();
        }
        out
    }

    fn condition(&mut self, e: &ast::Expr) -> R<Expr> {
        let c = self.rvalue(e)?;
        if !c.ty.is_scalar() {
            return sema_err(e.span, format!("condition of type {} is not scalar", c.ty));
        }
        Ok(c)
    }

    fn stmt(&mut self, s: &ast::Stmt) -> R<Stmt> {
        Ok(match &s.kind {
            StmtKind::Decl(d) => Stmt::Block(self.local_declaration(d)?),
            StmtKind::Expr(e) => Stmt::Expr(self.rvalue(e)?),
            StmtKind::Block(b) => Stmt::Block(self.block(b, true)?),
            StmtKind::If(c, t, e) => {
                let c = self.condition(c)?;
                let t = Box::new(self.scoped_stmt(t)?);
                let e = match e {
                    Some(e) => Some(Box::new(self.scoped_stmt(e)?)),
                    None => None,
                };
                Stmt::If(c, t, e)
            }
            StmtKind::While(c, body) => {
                let c = self.condition(c)?;
                Stmt::While(c, Box::new(self.loop_body(body)?))
            }
            StmtKind::DoWhile(body, c) => {
                let body = self.loop_body(body)?;
                Stmt::DoWhile(Box::new(body), self.condition(c)?)
            }
            StmtKind::For(init, cond, step, body) => {
                self.ctx().scopes.push(HashMap::new());
                let result = (|| {
                    let init = match init {
                        Some(s) => vec![self.stmt(s)?],
                        None => Vec::new(),
                    };
                    let cond = cond.as_ref().map(|c| self.condition(c)).transpose()?;
                    let step = step.as_ref().map(|e| self.rvalue(e)).transpose()?;
                    let body = self.loop_body(body)?;
                    Ok(Stmt::For(init, cond, step, Box::new(body)))
                })();
                self.ctx().scopes.pop();
                result?
            }
            StmtKind::Return(value) => {
                let ret = self.ctx().sig.ret.clone();
                match (value, ret.is_void()) {
                    (None, true) => Stmt::Return(None, s.span),
                    (None, false) => {
                        return sema_err(s.span, format!("missing return value of type {ret}"))
                    }
                    (Some(e), true) => {
                        let v = self.rvalue(e)?;
                        if !v.ty.is_void() {
                            return sema_err(e.span, "void function returns a value");
                        }
                        Stmt::Return(Some(v), s.span)
                    }
                    (Some(e), false) => {
                        let v = self.rvalue(e)?;
                        Stmt::Return(Some(self.assign_convert(v, &ret, "return")?), s.span)
                    }
                }
            }
            StmtKind::Break | StmtKind::Continue => {
                if self.ctx().loop_depth == 0 {
                    return sema_err(s.span, "`break`/`continue` outside of a loop");
                }
                if matches!(s.kind, StmtKind::Break) {
                    Stmt::Break
                } else {
                    Stmt::Continue
                }
            }
            StmtKind::Empty => Stmt::Block(Vec::new()),
        })
    }

    fn scoped_stmt(&mut self, s: &ast::Stmt) -> R<Stmt> {
        self.ctx().scopes.push(HashMap::new());
        let r = self.stmt(s);
        self.ctx().scopes.pop();
        r
    }

    fn loop_body(&mut self, s: &ast::Stmt) -> R<Stmt> {
        self.ctx().loop_depth += 1;
        let r = self.scoped_stmt(s);
        self.ctx().loop_depth -= 1;
        r
    }

    fn local_declaration(&mut self, d: &ast::Declaration) -> R<Vec<Stmt>> {
        let base = self.base_type(&d.base, d.span)?;
        let mut out = Vec::new();
        for v in &d.vars {
            let (name, ty, open_len) =
                self.apply_declarator(&v.declarator, base.clone(), v.span)?;
            let Some(name) = name else {
                return sema_err(v.span, "declaration without a name");
            };
            if is_builtin_name(&name) || name.starts_with(RESERVED_PREFIX) && !self.in_prelude {
                return sema_err(v.span, format!("`{name}` is reserved"));
            }
            if let GuestType::Function(_) = ty {
                return sema_err(v.span, "local function declarations are not supported");
            }
            let ty = self.complete_array_type(ty, open_len, v.init.as_ref(), v.span)?;
            self.check_object_type(&ty, &name, v.span)?;
            if self
                .ctx()
                .scopes
                .last()
                .is_some_and(|s| s.contains_key(&name))
            {
                return sema_err(v.span, format!("redeclaration of `{name}`"));
            }
            if d.is_static {
                let gid = self.globals.len();
                self.globals.push(Global {
                    name: name.clone(),
                    ty: ty.clone(),
                    init: Vec::new(),
                    is_local_static: true,
                    span: v.span,
                });
                self.ctx()
                    .scopes
                    .last_mut()
                    .expect("scope")
                    .insert(name, Symbol::Global(gid));
                if let Some(init) = &v.init {
                    let mut items = Vec::new();
                    self.init_items(&ty, init, 0, &mut items)?;
                    self.globals[gid].init = items;
                }
                out.push(Stmt::StaticLocal(gid));
            } else {
                let ctx = self.ctx();
                let id = ctx.locals.len();
                ctx.locals.push(LocalVar {
                    name: name.clone(),
                    ty: ty.clone(),
                });
                ctx.scopes
                    .last_mut()
                    .expect("scope")
                    .insert(name, Symbol::Local(id));
                let mut items = Vec::new();
                let zero = matches!(v.init, Some(Initializer::List(_)))
                    || matches!(ty, GuestType::Array(..)) && v.init.is_some();
                if let Some(init) = &v.init {
                    self.init_items(&ty, init, 0, &mut items)?;
                }
                out.push(Stmt::Local {
                    id,
                    init: items,
                    zero,
                    span: v.span,
                });
            }
        }
        Ok(out)
    }

    // ---- expressions ----

    fn lookup(&self, name: &str) -> Option<Symbol> {
        if let Some(ctx) = &self.cur {
            for s in ctx.scopes.iter().rev() {
                if let Some(sym) = s.get(name) {
                    return Some(sym.clone());
                }
            }
        }
        self.scope.get(name).cloned()
    }

    fn local_ty(&self, id: LocalId) -> GuestType {
        self.cur.as_ref().expect("function").locals[id].ty.clone()
    }

    fn rvalue(&mut self, e: &ast::Expr) -> R<Expr> {
        let x = self.expr(e)?;
        Ok(to_rvalue(x))
    }

    fn expr(&mut self, e: &ast::Expr) -> R<Expr> {
        let type_ok = std::mem::replace(&mut self.type_ok, false);
        let span = e.span;
        use ast::ExprKind as K;
        match &e.kind {
            K::Int {
                value,
                unsigned,
                long,
            } => Ok(int_literal(*value, *unsigned, *long, span)),
            K::Float(f) => Ok(Expr::new(
                ExprKind::Const(Value::Float(*f)),
                GuestType::Double,
                span,
            )),
            K::Char(c) => Ok(Expr::new(
                ExprKind::Const(Value::Int(*c)),
                GuestType::Int,
                span,
            )),
            K::Str(bytes) => {
                let id = self.intern(bytes);
                let ty = GuestType::Array(Rc::new(GuestType::Char), bytes.len() as u64 + 1);
                Ok(Expr::new(ExprKind::Str(id), ty, span))
            }
            K::Ident(name) => self.ident(name, span),
            K::Unary(op, x) => self.unary(*op, x, span),
            K::Binary(op, l, r) => self.binary(*op, l, r, span),
            K::Assign(op, l, r) => self.assign(*op, l, r, span),
            K::Cond(c, a, b) => {
                let c = self.condition(c)?;
                let a = self.rvalue(a)?;
                let b = self.rvalue(b)?;
                let (a, b, ty) = self.unify_branches(a, b, span)?;
                Ok(Expr::new(
                    ExprKind::Cond(Box::new(c), Box::new(a), Box::new(b)),
                    ty,
                    span,
                ))
            }
            K::Call(callee, args) => self.call(callee, args, span, type_ok),
            K::Index(a, i) => {
                let a = self.rvalue(a)?;
                let i = self.rvalue(i)?;
                let (p, i) = if a.ty.is_pointer() { (a, i) } else { (i, a) };
                if !p.ty.is_pointer() || !i.ty.is_integer() {
                    return sema_err(span, format!("cannot index {} with {}", p.ty, i.ty));
                }
                let sum = self.ptr_add(p, i, false, span)?;
                self.deref(sum, span)
            }
            K::Member(base, name, arrow) => {
                let base = if *arrow {
                    let p = self.rvalue(base)?;
                    if !p
                        .ty
                        .pointee()
                        .is_some_and(|t| matches!(t, GuestType::Struct(_)))
                    {
                        return sema_err(
                            span,
                            format!("`->{name}` on non-struct-pointer type {}", p.ty),
                        );
                    }
                    self.deref(p, span)?
                } else {
                    self.expr(base)?
                };
                let GuestType::Struct(def) = &base.ty else {
                    return sema_err(
                        span,
                        format!("member `{name}` of non-struct type {}", base.ty),
                    );
                };
                if !base.is_lvalue() {
                    return sema_err(
                        span,
                        "member access on a struct value that is not an lvalue",
                    );
                }
                let Some(field) = def.field(name) else {
                    return sema_err(span, format!("struct {} has no field `{name}`", def.name));
                };
                let (fty, off) = (field.ty.clone(), field.offset);
                Ok(Expr::new(ExprKind::Member(Box::new(base), off), fty, span))
            }
            K::Cast(t, x) => {
                let ty = self.type_name(t, span)?;
                let x = self.rvalue(x)?;
                self.explicit_cast(x, &ty, span)
            }
            K::SizeofType(t) => {
                let ty = self.type_name(t, span)?;
                sizeof_const(&ty, span)
            }
            K::SizeofExpr(x) => {
                let x = self.expr(x)?;
                sizeof_const(&x.ty, span)
            }
            K::Comma(a, b) => {
                let a = self.rvalue(a)?;
                let b = self.rvalue(b)?;
                let ty = b.ty.clone();
                Ok(Expr::new(
                    ExprKind::Comma(Box::new(a), Box::new(b)),
                    ty,
                    span,
                ))
            }
            K::VaArg(list, t) => {
                let ty = self.type_name(t, span)?;
                if ty.size().is_none() || matches!(ty, GuestType::Array(..)) {
                    return sema_err(span, format!("va_arg of invalid type {ty}"));
                }
                let l = self.rvalue(list)?;
                if !matches!(l.ty, GuestType::VaList) {
                    return sema_err(span, format!("va_arg on {} instead of va_list", l.ty));
                }
                Ok(Expr::new(ExprKind::VaArg(Box::new(l)), ty, span))
            }
        }
    }

    fn intern(&mut self, bytes: &[u8]) -> StrId {
        if let Some(id) = self.string_ids.get(bytes) {
            return *id;
        }
        let id = self.strings.len();
        let mut with_nul = bytes.to_vec();
        with_nul.push(0);
        self.strings.push(with_nul.into());
        self.string_ids.insert(bytes.to_vec(), id);
        id
    }

    fn ident(&mut self, name: &str, span: Span) -> R<Expr> {
        match self.lookup(name) {
            Some(Symbol::Local(id)) => Ok(Expr::new(ExprKind::Local(id), self.local_ty(id), span)),
            Some(Symbol::Global(id)) => Ok(Expr::new(
                ExprKind::Global(id),
                self.globals[id].ty.clone(),
                span,
            )),
            Some(Symbol::Func(id)) => {
                self.mark_used(id, span);
                let ty = GuestType::Function(self.functions[id].sig.clone());
                Ok(Expr::new(ExprKind::Func(id), ty, span))
            }
            Some(Symbol::Const(v, ty)) => Ok(Expr::new(ExprKind::Const(v), ty, span)),
            None if is_builtin_name(name) => {
                sema_err(span, format!("`{name}` can only be called directly"))
            }
            None => sema_err(span, format!("use of undeclared identifier `{name}`")),
        }
    }

    fn mark_used(&mut self, id: FuncId, span: Span) {
        let slot = &mut self.functions[id];
        if slot.first_use.is_none() {
            slot.first_use = Some(span);
        }
    }

    fn deref(&mut self, p: Expr, span: Span) -> R<Expr> {
        let Some(t) = p.ty.pointee().cloned() else {
            return sema_err(span, format!("dereference of non-pointer type {}", p.ty));
        };
        match t {
            // `*fp` designates the function again; keep the pointer.
            GuestType::Function(_) => Ok(p),
            GuestType::Void => sema_err(span, "dereference of a void pointer"),
            t => Ok(Expr::new(ExprKind::Deref(Box::new(p)), t, span)),
        }
    }

    fn unary(&mut self, op: UnaryOp, x: &ast::Expr, span: Span) -> R<Expr> {
        match op {
            UnaryOp::AddrOf => {
                let x = self.expr(x)?;
                match &x.kind {
                    ExprKind::Func(_) => {
                        let ty = GuestType::pointer_to(x.ty.clone());
                        Ok(Expr::new(ExprKind::AddrOf(Box::new(x)), ty, span))
                    }
                    _ if x.is_lvalue() => {
                        let ty = GuestType::pointer_to(x.ty.clone());
                        Ok(Expr::new(ExprKind::AddrOf(Box::new(x)), ty, span))
                    }
                    // `&*fp` for function pointers.
                    _ if x.ty.signature().is_some() && x.ty.is_pointer() => Ok(x),
                    _ => sema_err(span, "cannot take the address of an rvalue"),
                }
            }
            UnaryOp::Deref => {
                let p = self.rvalue(x)?;
                self.deref(p, span)
            }
            UnaryOp::Neg | UnaryOp::Plus | UnaryOp::BitNot => {
                let x = self.rvalue(x)?;
                let ok = if op == UnaryOp::BitNot {
                    x.ty.is_integer()
                } else {
                    x.ty.is_arithmetic()
                };
                if !ok {
                    return sema_err(
                        span,
                        format!("invalid operand type {} for unary operator", x.ty),
                    );
                }
                let ty = promote(&x.ty);
                let x = cast(x, &ty);
                Ok(match op {
                    UnaryOp::Plus => x,
                    UnaryOp::Neg => Expr::new(ExprKind::Unary(UnOp::Neg, Box::new(x)), ty, span),
                    _ => Expr::new(ExprKind::Unary(UnOp::BitNot, Box::new(x)), ty, span),
                })
            }
            UnaryOp::Not => {
                let x = self.rvalue(x)?;
                if !x.ty.is_scalar() {
                    return sema_err(span, format!("invalid operand type {} for `!`", x.ty));
                }
                Ok(Expr::new(
                    ExprKind::Unary(UnOp::Not, Box::new(x)),
                    GuestType::Int,
                    span,
                ))
            }
            UnaryOp::PreInc | UnaryOp::PreDec | UnaryOp::PostInc | UnaryOp::PostDec => {
                let target = self.modifiable(x)?;
                let delta = if matches!(op, UnaryOp::PreInc | UnaryOp::PostInc) {
                    1
                } else {
                    -1
                };
                let post = matches!(op, UnaryOp::PostInc | UnaryOp::PostDec);
                let scale = if target.ty.is_pointer() {
                    Some(self.elem_size(&target.ty, span)?)
                } else if target.ty.is_arithmetic() {
                    None
                } else {
                    return sema_err(
                        span,
                        format!("cannot increment a value of type {}", target.ty),
                    );
                };
                let ty = target.ty.clone();
                Ok(Expr::new(
                    ExprKind::IncDec {
                        target: Box::new(target),
                        delta,
                        post,
                        scale,
                    },
                    ty,
                    span,
                ))
            }
        }
    }

    fn modifiable(&mut self, x: &ast::Expr) -> R<Expr> {
        let t = self.expr(x)?;
        if !t.is_lvalue()
            || matches!(t.ty, GuestType::Array(..) | GuestType::Function(_))
            || matches!(t.kind, ExprKind::Str(_))
        {
            return sema_err(x.span, "expression is not assignable");
        }
        Ok(t)
    }

    fn elem_size(&self, ptr_ty: &GuestType, span: Span) -> R<i64> {
        match ptr_ty.pointee() {
            Some(GuestType::Void) => Ok(1),
            Some(t) => match t.size() {
                Some(s) => Ok(s as i64),
                None => sema_err(
                    span,
                    format!("arithmetic on a pointer to incomplete type {t}"),
                ),
            },
            None => sema_err(span, "pointer arithmetic on a non-pointer"),
        }
    }

    fn ptr_add(&mut self, p: Expr, i: Expr, negate: bool, span: Span) -> R<Expr> {
        let scale = self.elem_size(&p.ty, span)?;
        let ty = p.ty.clone();
        let i = cast(i, &GuestType::Long);
        Ok(Expr::new(
            ExprKind::PtrAdd(
                Box::new(p),
                Box::new(i),
                if negate { -scale } else { scale },
            ),
            ty,
            span,
        ))
    }

    fn binary(&mut self, op: BinaryOp, l: &ast::Expr, r: &ast::Expr, span: Span) -> R<Expr> {
        let l = self.rvalue(l)?;
        let r = self.rvalue(r)?;
        match op {
            BinaryOp::And | BinaryOp::Or => {
                if !l.ty.is_scalar() || !r.ty.is_scalar() {
                    return sema_err(span, "operands of a logical operator must be scalar");
                }
                let kind = if op == BinaryOp::And {
                    ExprKind::And(Box::new(l), Box::new(r))
                } else {
                    ExprKind::Or(Box::new(l), Box::new(r))
                };
                Ok(Expr::new(kind, GuestType::Int, span))
            }
            BinaryOp::Add if l.ty.is_pointer() && r.ty.is_integer() => {
                self.ptr_add(l, r, false, span)
            }
            BinaryOp::Add if l.ty.is_integer() && r.ty.is_pointer() => {
                self.ptr_add(r, l, false, span)
            }
            BinaryOp::Sub if l.ty.is_pointer() && r.ty.is_integer() => {
                self.ptr_add(l, r, true, span)
            }
            BinaryOp::Sub if l.ty.is_pointer() && r.ty.is_pointer() => {
                let scale = self.elem_size(&l.ty, span)?;
                Ok(Expr::new(
                    ExprKind::PtrDiff(Box::new(l), Box::new(r), scale),
                    GuestType::Long,
                    span,
                ))
            }
            _ if op.is_comparison() && (l.ty.is_pointer() || r.ty.is_pointer()) => {
                let (l, r) = match (l.ty.is_pointer(), r.ty.is_pointer()) {
                    (true, true) => (l, r),
                    (true, false) if is_null_constant(&r) => {
                        let t = l.ty.clone();
                        (l, null_of(&t, r.span))
                    }
                    (false, true) if is_null_constant(&l) => {
                        let t = r.ty.clone();
                        (null_of(&t, l.span), r)
                    }
                    _ => {
                        return sema_err(span, format!("comparison between {} and {}", l.ty, r.ty))
                    }
                };
                Ok(Expr::new(
                    ExprKind::PtrCmp(arith_op(op), Box::new(l), Box::new(r)),
                    GuestType::Int,
                    span,
                ))
            }
            _ => {
                if !l.ty.is_arithmetic() || !r.ty.is_arithmetic() {
                    return sema_err(
                        span,
                        format!(
                            "invalid operands to `{}`: {} and {}",
                            op.symbol(),
                            l.ty,
                            r.ty
                        ),
                    );
                }
                let integer_only = matches!(
                    op,
                    BinaryOp::Rem
                        | BinaryOp::Shl
                        | BinaryOp::Shr
                        | BinaryOp::BitAnd
                        | BinaryOp::BitOr
                        | BinaryOp::BitXor
                );
                if integer_only && (!l.ty.is_integer() || !r.ty.is_integer()) {
                    return sema_err(span, format!("`{}` needs integer operands", op.symbol()));
                }
                if matches!(op, BinaryOp::Shl | BinaryOp::Shr) {
                    let lt = promote(&l.ty);
                    let rt = promote(&r.ty);
                    let l = cast(l, &lt);
                    let r = cast(r, &rt);
                    return Ok(Expr::new(
                        ExprKind::Binary(arith_op(op), Box::new(l), Box::new(r)),
                        lt,
                        span,
                    ));
                }
                let ct = common_type(&l.ty, &r.ty);
                let l = cast(l, &ct);
                let r = cast(r, &ct);
                let ty = if op.is_comparison() {
                    GuestType::Int
                } else {
                    ct
                };
                Ok(Expr::new(
                    ExprKind::Binary(arith_op(op), Box::new(l), Box::new(r)),
                    ty,
                    span,
                ))
            }
        }
    }

    fn assign(
        &mut self,
        op: Option<BinaryOp>,
        l: &ast::Expr,
        r: &ast::Expr,
        span: Span,
    ) -> R<Expr> {
        let target = self.modifiable(l)?;
        let rhs = self.rvalue(r)?;
        let ty = target.ty.clone();
        let Some(op) = op else {
            let rhs = self.assign_convert(rhs, &ty, "assignment")?;
            return Ok(Expr::new(
                ExprKind::Assign(Box::new(target), Box::new(rhs)),
                ty,
                span,
            ));
        };
        if ty.is_pointer() && matches!(op, BinaryOp::Add | BinaryOp::Sub) && rhs.ty.is_integer() {
            let scale = self.elem_size(&ty, span)?;
            let rhs = cast(rhs, &GuestType::Long);
            return Ok(Expr::new(
                ExprKind::CompoundAssign {
                    op: arith_op(op),
                    target: Box::new(target),
                    rhs: Box::new(rhs),
                    op_ty: GuestType::Long,
                    scale: Some(scale),
                },
                ty,
                span,
            ));
        }
        if !ty.is_arithmetic() || !rhs.ty.is_arithmetic() {
            return sema_err(
                span,
                format!("invalid compound assignment of {} to {ty}", rhs.ty),
            );
        }
        let integer_only = matches!(
            op,
            BinaryOp::Rem
                | BinaryOp::Shl
                | BinaryOp::Shr
                | BinaryOp::BitAnd
                | BinaryOp::BitOr
                | BinaryOp::BitXor
        );
        if integer_only && (!ty.is_integer() || !rhs.ty.is_integer()) {
            return sema_err(span, format!("`{}=` needs integer operands", op.symbol()));
        }
        let (op_ty, rhs) = if matches!(op, BinaryOp::Shl | BinaryOp::Shr) {
            let rt = promote(&rhs.ty);
            (promote(&ty), cast(rhs, &rt))
        } else {
            let ct = common_type(&ty, &rhs.ty);
            let rhs = cast(rhs, &ct);
            (ct, rhs)
        };
        Ok(Expr::new(
            ExprKind::CompoundAssign {
                op: arith_op(op),
                target: Box::new(target),
                rhs: Box::new(rhs),
                op_ty,
                scale: None,
            },
            ty,
            span,
        ))
    }

    fn unify_branches(&mut self, a: Expr, b: Expr, span: Span) -> R<(Expr, Expr, GuestType)> {
        if a.ty.is_arithmetic() && b.ty.is_arithmetic() {
            let ct = common_type(&a.ty, &b.ty);
            return Ok((cast(a, &ct), cast(b, &ct), ct));
        }
        if a.ty.is_pointer() && b.ty.is_pointer() {
            let t = a.ty.clone();
            return Ok((a, b, t));
        }
        if a.ty.is_pointer() && is_null_constant(&b) {
            let t = a.ty.clone();
            let b = null_of(&t, b.span);
            return Ok((a, b, t));
        }
        if b.ty.is_pointer() && is_null_constant(&a) {
            let t = b.ty.clone();
            let a = null_of(&t, a.span);
            return Ok((a, b, t));
        }
        if a.ty == b.ty {
            let t = a.ty.clone();
            return Ok((a, b, t));
        }
        sema_err(
            span,
            format!("incompatible operand types {} and {} in `?:`", a.ty, b.ty),
        )
    }

    /// Implicit conversion for assignment, initialization, arguments, and
    /// return values.
    fn assign_convert(&mut self, x: Expr, to: &GuestType, what: &str) -> R<Expr> {
        if x.ty.is_arithmetic() && to.is_arithmetic() {
            return Ok(cast(x, to));
        }
        if to.is_pointer() {
            if x.ty.is_pointer() {
                // Pointer conversions are permitted, including between
                // incompatible function pointer types; calls check the
                // target's real signature at run time.
                return Ok(retype(x, to));
            }
            if is_null_constant(&x) {
                return Ok(null_of(to, x.span));
            }
        }
        if matches!(
            (&x.ty, to),
            (GuestType::Struct(_), GuestType::Struct(_)) | (GuestType::VaList, GuestType::VaList)
        ) && x.ty == *to
        {
            return Ok(x);
        }
        sema_err(
            x.span,
            format!(
                "incompatible types in {what}: cannot convert {} to {to}",
                x.ty
            ),
        )
    }

    fn explicit_cast(&mut self, x: Expr, to: &GuestType, span: Span) -> R<Expr> {
        if to.is_void() {
            return Ok(Expr::new(
                ExprKind::Cast(Box::new(x)),
                GuestType::Void,
                span,
            ));
        }
        if (x.ty.is_arithmetic() && to.is_arithmetic()) || (x.ty.is_pointer() && to.is_pointer()) {
            let mut c = cast(x, to);
            c.span = span;
            return Ok(c);
        }
        if to.is_pointer() && is_null_constant(&x) {
            return Ok(null_of(to, span));
        }
        if x.ty.is_pointer() && to.is_integer() || x.ty.is_integer() && to.is_pointer() {
            return sema_err(
                span,
                format!(
                    "conversion between integer and pointer ({} to {to}) is not supported",
                    x.ty
                ),
            );
        }
        if x.ty == *to {
            return Ok(x);
        }
        sema_err(span, format!("invalid cast from {} to {to}", x.ty))
    }

    fn call(
        &mut self,
        callee: &ast::Expr,
        args: &[ast::Expr],
        span: Span,
        type_ok: bool,
    ) -> R<Expr> {
        if let ast::ExprKind::Ident(name) = &callee.kind {
            if self.lookup(name).is_none() || is_builtin_name(name) {
                if name == "type" {
                    return self.type_operator(args, span, type_ok);
                }
                if is_builtin_name(name) {
                    return self.builtin_call(name, args, span);
                }
                return sema_err(span, format!("call to undeclared function `{name}`"));
            }
        }
        let f = self.expr(callee)?;
        let (callee, sig) = match &f.kind {
            ExprKind::Func(id) => (Callee::Direct(*id), self.functions[*id].sig.clone()),
            _ => {
                let f = to_rvalue(f);
                let Some(sig) = f.ty.signature().cloned().filter(|_| f.ty.is_pointer()) else {
                    return sema_err(
                        span,
                        format!("called object of type {} is not a function", f.ty),
                    );
                };
                (Callee::Indirect(Box::new(f)), sig)
            }
        };
        let fixed = sig.params.len();
        if args.len() < fixed || (!sig.variadic && args.len() != fixed) {
            return sema_err(
                span,
                format!(
                    "expected {}{fixed} argument(s), found {}",
                    if sig.variadic { "at least " } else { "" },
                    args.len()
                ),
            );
        }
        let mut hargs = Vec::with_capacity(args.len());
        for (i, a) in args.iter().enumerate() {
            self.type_ok = true;
            let x = self.rvalue(a)?;
            let x = match sig.params.get(i) {
                Some(pt) => self.assign_convert(x, pt, "argument passing")?,
                None => default_promote(x, a.span)?,
            };
            hargs.push(x);
        }
        Ok(Expr::new(
            ExprKind::Call {
                callee,
                args: hargs,
            },
            sig.ret.clone(),
            span,
        ))
    }

    fn type_operator(&mut self, args: &[ast::Expr], span: Span, type_ok: bool) -> R<Expr> {
        if !type_ok {
            return sema_err(
                span,
                "`type()` may only appear as a call argument or an initializer",
            );
        }
        let [arg] = args else {
            return sema_err(span, "`type()` takes exactly one expression");
        };
        let x = self.expr(arg)?;
        let t = lower_type_operator(&x.ty);
        let id = self.type_descs.len();
        self.type_descs.push(Rc::new(t));
        Ok(Expr::new(ExprKind::TypeDesc(id), self.type_ptr(), span))
    }

    fn type_ptr(&self) -> GuestType {
        GuestType::pointer_to(GuestType::Struct(self.type_def.clone()))
    }

    fn builtin_spec(&self, name: &str) -> BuiltinSpec {
        use GuestType as G;
        let vp = G::void_ptr;
        let (builtin, ret, params) = match name {
            "_size_left" => (Builtin::SizeLeftRaw, G::Long, vec![vp()]),
            "_size_right" => (Builtin::SizeRightRaw, G::Long, vec![vp()]),
            "location" => (Builtin::Location, G::Int, vec![vp()]),
            "try_cast" => (Builtin::TryCast, vp(), vec![vp(), self.type_ptr()]),
            "count_varargs" => (Builtin::CountVarargs, G::Int, vec![]),
            "_get_vararg" => (Builtin::GetVarargRaw, vp(), vec![G::Int]),
            "get_vararg" => (Builtin::GetVararg, vp(), vec![G::Int, self.type_ptr()]),
            "va_start" => (Builtin::VaStart, G::Void, vec![]),
            "va_end" => (Builtin::VaEnd, G::Void, vec![]),
            "va_copy" => (Builtin::VaCopy, G::Void, vec![]),
            "abort" => (Builtin::Abort, G::Void, vec![]),
            "exit" => (Builtin::Exit, G::Void, vec![G::Int]),
            "__host_putchar" => (Builtin::HostPutchar, G::Int, vec![G::Int, G::Int]),
            "__host_getchar" => (Builtin::HostGetchar, G::Int, vec![]),
            "__host_malloc" => (Builtin::HostMalloc, vp(), vec![G::ULong]),
            "__host_free" => (Builtin::HostFree, G::Void, vec![vp()]),
            "__host_memcpy" => (Builtin::HostMemcpy, G::Int, vec![vp(), vp(), G::ULong]),
            "__host_memset" => (Builtin::HostMemset, G::Int, vec![vp(), G::Int, G::ULong]),
            "__host_fmt_double" => (
                Builtin::HostFmtDouble,
                G::Int,
                vec![G::char_ptr(), G::ULong, G::Double, G::Int],
            ),
            "__va_count" => (Builtin::VaCount, G::Int, vec![G::VaList]),
            "__va_peek" => (
                Builtin::VaPeek,
                vp(),
                vec![G::VaList, G::Int, self.type_ptr()],
            ),
            other => unreachable!("not a builtin: {other}"),
        };
        BuiltinSpec {
            builtin,
            ret,
            params,
        }
    }

    fn builtin_call(&mut self, name: &str, args: &[ast::Expr], span: Span) -> R<Expr> {
        if name.starts_with(RESERVED_PREFIX) && !self.in_prelude {
            return sema_err(
                span,
                format!("`{name}` is reserved for the standard library"),
            );
        }
        if self.cur.is_none() {
            return sema_err(span, format!("`{name}` cannot be used outside a function"));
        }
        let spec = self.builtin_spec(name);
        let va_list_lvalue = |this: &mut Self, a: &ast::Expr| -> R<Expr> {
            let x = this.expr(a)?;
            if !x.is_lvalue() || !matches!(x.ty, GuestType::VaList) {
                return sema_err(a.span, format!("`{name}` expects a va_list variable"));
            }
            Ok(x)
        };
        let hargs = match spec.builtin {
            Builtin::VaStart => {
                let [list, _last] = args else {
                    return sema_err(
                        span,
                        "va_start takes a va_list and the last fixed parameter",
                    );
                };
                if !self.ctx().sig.variadic {
                    return sema_err(
                        span,
                        "va_start used in a function without variadic parameters",
                    );
                }
                vec![va_list_lvalue(self, list)?]
            }
            Builtin::VaEnd => {
                let [list] = args else {
                    return sema_err(span, "va_end takes one va_list");
                };
                vec![va_list_lvalue(self, list)?]
            }
            Builtin::VaCopy => {
                let [dst, src] = args else {
                    return sema_err(span, "va_copy takes two va_list arguments");
                };
                let d = va_list_lvalue(self, dst)?;
                let s = self.rvalue(src)?;
                if !matches!(s.ty, GuestType::VaList) {
                    return sema_err(src.span, "va_copy source is not a va_list");
                }
                vec![d, s]
            }
            _ => {
                if args.len() != spec.params.len() {
                    return sema_err(
                        span,
                        format!(
                            "`{name}` expects {} argument(s), found {}",
                            spec.params.len(),
                            args.len()
                        ),
                    );
                }
                let mut out = Vec::new();
                for (a, pt) in args.iter().zip(&spec.params) {
                    self.type_ok = true;
                    let x = self.rvalue(a)?;
                    out.push(self.assign_convert(x, pt, "argument passing")?);
                }
                out
            }
        };
        Ok(Expr::new(
            ExprKind::Builtin(spec.builtin, hargs),
            spec.ret,
            span,
        ))
    }
}

impl Default for Analyzer {
    fn default() -> Self {
        Analyzer::new()
    }
}

/// The declared type an expression hands to `type()`, as a run-time type
/// expression.
pub fn lower_type_operator(ty: &GuestType) -> TypeExpr {
    ty.to_type_expr()
}

fn function_params(d: &Declarator) -> &[ast::Param] {
    match d {
        Declarator::Function(inner, params, _) if matches!(**inner, Declarator::Name(_)) => params,
        Declarator::Pointer(inner)
        | Declarator::Array(inner, _)
        | Declarator::Function(inner, ..) => function_params(inner),
        Declarator::Name(_) => &[],
    }
}

fn sig_same(a: &Signature, b: &Signature) -> bool {
    GuestType::Function(Rc::new(a.clone())) == GuestType::Function(Rc::new(b.clone()))
}

fn int_literal(value: u64, unsigned: bool, long: bool, span: Span) -> Expr {
    let ty = match (unsigned, long) {
        (false, false) if value <= i32::MAX as u64 => GuestType::Int,
        (true, false) if value <= u32::MAX as u64 => GuestType::UInt,
        (false, _) if value <= i64::MAX as u64 => GuestType::Long,
        _ => GuestType::ULong,
    };
    Expr::new(ExprKind::Const(Value::Int(value as i64)), ty, span)
}

fn sizeof_const(ty: &GuestType, span: Span) -> R<Expr> {
    match ty.size() {
        Some(s) if !ty.is_void() => Ok(Expr::new(
            ExprKind::Const(Value::Int(s as i64)),
            GuestType::ULong,
            span,
        )),
        _ => sema_err(span, format!("sizeof applied to incomplete type {ty}")),
    }
}

fn to_rvalue(x: Expr) -> Expr {
    let span = x.span;
    match &x.ty {
        GuestType::Array(elem, _) if x.is_lvalue() => {
            let ty = GuestType::Pointer(elem.clone());
            Expr::new(ExprKind::AddrOf(Box::new(x)), ty, span)
        }
        GuestType::Function(_) if matches!(x.kind, ExprKind::Func(_)) => {
            let ty = GuestType::pointer_to(x.ty.clone());
            Expr::new(ExprKind::AddrOf(Box::new(x)), ty, span)
        }
        _ if x.is_lvalue() => {
            let ty = x.ty.clone();
            Expr::new(ExprKind::Load(Box::new(x)), ty, span)
        }
        _ => x,
    }
}

fn promote(t: &GuestType) -> GuestType {
    match t {
        GuestType::Char => GuestType::Int,
        t => t.clone(),
    }
}

fn rank(t: &GuestType) -> u8 {
    match t {
        GuestType::Char => 1,
        GuestType::Int | GuestType::UInt => 2,
        _ => 3,
    }
}

/// Usual arithmetic conversions over the MiniC scalar set.
pub fn common_type(a: &GuestType, b: &GuestType) -> GuestType {
    if matches!(a, GuestType::Double) || matches!(b, GuestType::Double) {
        return GuestType::Double;
    }
    let (a, b) = (promote(a), promote(b));
    if a == b {
        return a;
    }
    if a.is_unsigned() == b.is_unsigned() {
        return if rank(&a) >= rank(&b) { a } else { b };
    }
    let (u, s) = if a.is_unsigned() { (a, b) } else { (b, a) };
    if rank(&u) >= rank(&s) {
        u
    } else {
        // long can represent every unsigned int.
        s
    }
}

fn cast(x: Expr, to: &GuestType) -> Expr {
    if x.ty == *to {
        return x;
    }
    let span = x.span;
    Expr::new(ExprKind::Cast(Box::new(x)), to.clone(), span)
}

fn retype(mut x: Expr, to: &GuestType) -> Expr {
    x.ty = to.clone();
    x
}

fn default_promote(x: Expr, span: Span) -> R<Expr> {
    match &x.ty {
        GuestType::Char => Ok(cast(x, &GuestType::Int)),
        GuestType::Void => sema_err(span, "void value passed as a variadic argument"),
        _ => Ok(x),
    }
}

fn is_null_constant(x: &Expr) -> bool {
    match &x.kind {
        ExprKind::Const(Value::Int(0)) => x.ty.is_integer(),
        ExprKind::Const(Value::Ptr(p)) => p.is_null(),
        ExprKind::Cast(inner) => x.ty.is_pointer() && is_null_constant(inner),
        _ => false,
    }
}

fn null_of(ty: &GuestType, span: Span) -> Expr {
    Expr::new(
        ExprKind::Const(Value::Ptr(GuestPointer::null())),
        ty.clone(),
        span,
    )
}

fn arith_op(op: BinaryOp) -> ArithOp {
    match op {
        BinaryOp::Mul => ArithOp::Mul,
        BinaryOp::Div => ArithOp::Div,
        BinaryOp::Rem => ArithOp::Rem,
        BinaryOp::Add => ArithOp::Add,
        BinaryOp::Sub => ArithOp::Sub,
        BinaryOp::Shl => ArithOp::Shl,
        BinaryOp::Shr => ArithOp::Shr,
        BinaryOp::Lt => ArithOp::Lt,
        BinaryOp::Gt => ArithOp::Gt,
        BinaryOp::Le => ArithOp::Le,
        BinaryOp::Ge => ArithOp::Ge,
        BinaryOp::Eq => ArithOp::Eq,
        BinaryOp::Ne => ArithOp::Ne,
        BinaryOp::BitAnd => ArithOp::BitAnd,
        BinaryOp::BitXor => ArithOp::BitXor,
        BinaryOp::BitOr => ArithOp::BitOr,
        BinaryOp::And | BinaryOp::Or => unreachable!("logical operators are lowered separately"),
    }
}

/// Folds integer constant expressions (array lengths).
pub fn const_eval(x: &Expr) -> Option<Value> {
    match &x.kind {
        ExprKind::Const(v) => Some(v.clone()),
        ExprKind::Cast(inner) => Some(ops::convert(const_eval(inner)?, &inner.ty, &x.ty)),
        ExprKind::Unary(op, inner) => Some(ops::unary(*op, &const_eval(inner)?, &x.ty)),
        ExprKind::Binary(op, a, b) => {
            ops::binary(*op, &const_eval(a)?, &const_eval(b)?, &a.ty).ok()
        }
        _ => None,
    }
}
