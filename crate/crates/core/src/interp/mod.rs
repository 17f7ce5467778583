//! Tree-walking evaluation of the typed program over managed memory.

pub mod ops;

use std::cell::RefCell;
use std::rc::Rc;

use crate::diag::{Diagnostic, DiagnosticKind, SourceSpan, Span};
use crate::frontend::hir::{Builtin, Callee, Expr, ExprKind, InitItem, Program, Stmt};
use crate::introspection::{self, VarargsView};
use crate::runtime::{
    AccessStats, Frame, FuncId, GuestPointer, LocationKind, Runtime, Value, Violation,
};
use crate::types::{GuestType, TypeExpr};

pub const DEFAULT_MAX_STEPS: u64 = 50_000_000;
pub const DEFAULT_MAX_DEPTH: usize = 10_000;
/// Largest single `malloc` request honored; larger ones return NULL.
pub const DEFAULT_MAX_ALLOCATION: u64 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: u64,
    pub max_depth: usize,
    pub max_allocation: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: DEFAULT_MAX_STEPS,
            max_depth: DEFAULT_MAX_DEPTH,
            max_allocation: DEFAULT_MAX_ALLOCATION,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExecConfig {
    /// Guest `argv`, including `argv[0]`.
    pub argv: Vec<String>,
    pub stdin: Vec<u8>,
    pub limits: Limits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    Exit(i32),
    Aborted(Diagnostic),
}

/// Everything observable about one program run.
#[derive(Clone, Debug)]
pub struct ExecOutcome {
    pub termination: Termination,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    /// Set when the guest itself called `abort()`.
    pub note: Option<String>,
    /// Final value of the guest `errno`.
    pub errno: i64,
    pub stats: AccessStats,
    pub steps: u64,
    /// Guest frames still on the stack after the run; always zero.
    pub frames_left: usize,
}

impl ExecOutcome {
    pub fn exit_status(&self) -> Option<i32> {
        match self.termination {
            Termination::Exit(s) => Some(s),
            Termination::Aborted(_) => None,
        }
    }

    pub fn diagnostic(&self) -> Option<&Diagnostic> {
        match &self.termination {
            Termination::Aborted(d) => Some(d),
            Termination::Exit(_) => None,
        }
    }

    pub fn stdout_text(&self) -> String {
        String::from_utf8_lossy(&self.stdout).into_owned()
    }
}

/// Non-local exits out of evaluation.
#[derive(Debug)]
pub enum Stop {
    Diag(Diagnostic),
    Exit { status: i32, guest_abort: bool },
}

type Ev<T> = Result<T, Stop>;

enum Flow {
    Normal,
    Break,
    Continue,
    Return(Value),
}

/// Exit status reported for a guest `abort()`.
pub const ABORT_STATUS: i32 = 134;

pub struct Interpreter<'p> {
    prog: &'p Program,
    pub rt: Runtime,
    globals: Vec<Option<GuestPointer>>,
    initialized: Vec<bool>,
    strings: Vec<Option<GuestPointer>>,
    functions: Vec<Option<GuestPointer>>,
    type_descs: Vec<Option<GuestPointer>>,
    frames: Vec<Frame>,
    stdin: Vec<u8>,
    stdin_pos: usize,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    steps: u64,
    limits: Limits,
}

impl<'p> Interpreter<'p> {
    pub fn new(prog: &'p Program, stdin: Vec<u8>, limits: Limits) -> Self {
        Interpreter {
            prog,
            rt: Runtime::new(),
            globals: vec![None; prog.globals.len()],
            initialized: vec![false; prog.globals.len()],
            strings: vec![None; prog.strings.len()],
            functions: vec![None; prog.functions.len()],
            type_descs: vec![None; prog.type_descs.len()],
            frames: Vec::new(),
            stdin,
            stdin_pos: 0,
            stdout: Vec::new(),
            stderr: Vec::new(),
            steps: 0,
            limits,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    // ---- diagnostics ----

    fn files(&self) -> &[String] {
        &self.prog.files
    }

    fn diag(&self, kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Stop {
        let mut d = Diagnostic::new(kind, span.resolve(self.files()), message);
        d.stack = self
            .frames
            .iter()
            .rev()
            .map(|f| f.name.to_string())
            .collect();
        if d.stack.is_empty() {
            d.stack.push("<startup>".to_string());
        }
        Stop::Diag(d)
    }

    fn at<T>(&self, r: Result<T, Violation>, span: Span) -> Ev<T> {
        r.map_err(|v| self.diag(v.kind, span, v.message))
    }

    fn tick(&mut self, span: Span) -> Ev<()> {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            return Err(self.diag(
                DiagnosticKind::InternalLimit,
                span,
                format!("step limit of {} exceeded", self.limits.max_steps),
            ));
        }
        Ok(())
    }

    // ---- static objects ----

    fn allocate_for(
        &mut self,
        ty: &GuestType,
        loc: LocationKind,
    ) -> Result<GuestPointer, Violation> {
        match ty {
            GuestType::Array(elem, n) => self.rt.allocate(elem, *n, loc),
            t => self.rt.allocate(t, 1, loc),
        }
    }

    fn global_ptr(&mut self, id: usize, span: Span) -> Ev<GuestPointer> {
        if let Some(p) = &self.globals[id] {
            return Ok(p.clone());
        }
        let ty = self.prog.globals[id].ty.clone();
        let p = self.allocate_for(&ty, LocationKind::Static);
        let p = self.at(p, span)?;
        self.globals[id] = Some(p.clone());
        Ok(p)
    }

    fn init_global(&mut self, id: usize) -> Ev<()> {
        if self.initialized[id] {
            return Ok(());
        }
        self.initialized[id] = true;
        let g = &self.prog.globals[id];
        let p = self.global_ptr(id, g.span)?;
        self.run_init(&p, &g.init)
    }

    fn run_init(&mut self, base: &GuestPointer, items: &[InitItem]) -> Ev<()> {
        for item in items {
            let v = self.eval(&item.value)?;
            let target = base.offset_by(item.offset as i64);
            let r = self.rt.store(&target, &item.value.ty, v);
            self.at(r, item.value.span)?;
        }
        Ok(())
    }

    fn string_ptr(&mut self, id: usize, span: Span) -> Ev<GuestPointer> {
        if let Some(p) = &self.strings[id] {
            return Ok(p.clone());
        }
        let bytes = self.prog.strings[id].clone();
        let p = self
            .rt
            .allocate(&GuestType::Char, bytes.len() as u64, LocationKind::Static);
        let p = self.at(p, span)?;
        for (i, b) in bytes.iter().enumerate() {
            let r = self.rt.store(
                &p.offset_by(i as i64),
                &GuestType::Char,
                Value::Int(*b as i8 as i64),
            );
            self.at(r, span)?;
        }
        self.strings[id] = Some(p.clone());
        Ok(p)
    }

    pub fn function_ptr(&mut self, id: FuncId) -> GuestPointer {
        if let Some(p) = &self.functions[id] {
            return p.clone();
        }
        let p = self.rt.allocate_function(id, self.prog.functions[id].ty());
        self.functions[id] = Some(p.clone());
        p
    }

    fn type_desc_ptr(&mut self, id: usize) -> GuestPointer {
        if let Some(p) = &self.type_descs[id] {
            return p.clone();
        }
        let p = self
            .rt
            .allocate_type_desc(self.prog.type_descs[id].clone(), GuestType::Void);
        self.type_descs[id] = Some(p.clone());
        p
    }

    /// Allocates and initializes every file-scope variable in order.
    pub fn init_globals(&mut self) -> Result<(), Stop> {
        for id in 0..self.prog.globals.len() {
            if !self.prog.globals[id].is_local_static {
                self.init_global(id)?;
            }
        }
        Ok(())
    }

    /// Reads an `int` global by name (used for `errno`).
    pub fn read_int_global(&mut self, name: &str) -> Option<i64> {
        let id = self
            .prog
            .globals
            .iter()
            .position(|g| g.name == name && !g.is_local_static)?;
        let p = self.globals[id].clone()?;
        self.rt
            .load(&p, &self.prog.globals[id].ty)
            .ok()
            .map(|v| v.as_int())
    }

    // ---- calls ----

    /// Calls a guest function with already-evaluated arguments, each paired
    /// with its declared type. Fixed parameters are converted to the
    /// parameter types; the variadic tail is boxed one object per argument.
    pub fn call_function(
        &mut self,
        fid: FuncId,
        args: Vec<(Value, GuestType)>,
        span: Span,
    ) -> Ev<Value> {
        stacker::maybe_grow(256 * 1024, 8 * 1024 * 1024, || {
            self.call_inner(fid, args, span)
        })
    }

    fn call_inner(&mut self, fid: FuncId, args: Vec<(Value, GuestType)>, span: Span) -> Ev<Value> {
        let func = self.prog.functions[fid].clone();
        let Some(body) = &func.body else {
            return Err(self.diag(
                DiagnosticKind::SemaError,
                span,
                format!("function `{}` has no body", func.name),
            ));
        };
        if self.frames.len() >= self.limits.max_depth {
            return Err(self.diag(
                DiagnosticKind::InternalLimit,
                span,
                format!("call depth limit of {} exceeded", self.limits.max_depth),
            ));
        }
        let fixed = func.sig.params.len();
        if args.len() < fixed || (!func.sig.variadic && args.len() != fixed) {
            return Err(self.diag(
                DiagnosticKind::TypeViolation,
                span,
                format!(
                    "`{}` called with {} argument(s), expects {fixed}",
                    func.name,
                    args.len()
                ),
            ));
        }
        let mut frame = Frame::new(fid, func.name.clone(), func.locals.len(), fixed);
        for (i, (v, ty)) in args.into_iter().enumerate() {
            let decl = if i < fixed {
                func.sig.params[i].clone()
            } else {
                ty.clone()
            };
            let v = if i < fixed {
                ops::convert(v, &ty, &decl)
            } else {
                v
            };
            let boxed = self
                .rt
                .allocate(&decl, 1, LocationKind::Automatic)
                .and_then(|p| {
                    self.rt.store(&p, &decl, v)?;
                    Ok(p)
                });
            let p = match boxed {
                Ok(p) => p,
                Err(v) => {
                    self.rt.end_scope(&mut frame);
                    return Err(self.diag(v.kind, span, v.message));
                }
            };
            let obj = p.pointee.expect("fresh object");
            if i < fixed {
                frame.locals[i] = Some(obj.clone());
            }
            frame.arguments.push(obj.clone());
            frame.owned.push(obj);
        }
        self.frames.push(frame);
        let result = self.exec_block(body);
        let mut frame = self.frames.pop().expect("frame");
        self.rt.end_scope(&mut frame);
        match result? {
            Flow::Return(v) => Ok(v),
            _ => Ok(Value::zero(&func.sig.ret)),
        }
    }

    /// Runs `main` and produces the outcome.
    pub fn run_main(&mut self, argv: &[String]) -> Ev<i32> {
        let user_span = Span::new(1, 1, 1);
        let Some(main) = self.prog.main else {
            return Err(self.diag(
                DiagnosticKind::SemaError,
                user_span,
                "program has no `main` function",
            ));
        };
        let f = self.prog.functions[main].clone();
        let ok_ret = matches!(f.sig.ret, GuestType::Int) && !f.sig.variadic;
        let args = match f.sig.params.as_slice() {
            [] if ok_ret => Vec::new(),
            [GuestType::Int, GuestType::Pointer(inner)]
                if ok_ret
                    && matches!(&**inner, GuestType::Pointer(c) if matches!(**c, GuestType::Char)) =>
            {
                let argv_ptr = self.build_argv(argv, f.span)?;
                vec![
                    (Value::Int(argv.len() as i64), GuestType::Int),
                    (Value::Ptr(argv_ptr), f.sig.params[1].clone()),
                ]
            }
            _ => {
                return Err(self.diag(
                    DiagnosticKind::SemaError,
                    f.span,
                    "`main` must be declared `int main(void)` or `int main(int, char **)`",
                ))
            }
        };
        self.init_globals()?;
        let v = self.call_function(main, args, f.span)?;
        Ok(v.as_int() as i32)
    }

    fn build_argv(&mut self, argv: &[String], span: Span) -> Ev<GuestPointer> {
        let char_ptr = GuestType::char_ptr();
        let table = self
            .rt
            .allocate(&char_ptr, argv.len() as u64 + 1, LocationKind::Static);
        let table = self.at(table, span)?;
        for (i, a) in argv.iter().enumerate() {
            let bytes = a.as_bytes();
            let s = self.rt.allocate(
                &GuestType::Char,
                bytes.len() as u64 + 1,
                LocationKind::Static,
            );
            let s = self.at(s, span)?;
            for (j, b) in bytes.iter().enumerate() {
                let r = self.rt.store(
                    &s.offset_by(j as i64),
                    &GuestType::Char,
                    Value::Int(*b as i8 as i64),
                );
                self.at(r, span)?;
            }
            let r = self
                .rt
                .store(&table.offset_by(i as i64 * 8), &char_ptr, Value::Ptr(s));
            self.at(r, span)?;
        }
        Ok(table)
    }

    // ---- statements ----

    fn exec_block(&mut self, stmts: &[Stmt]) -> Ev<Flow> {
        for s in stmts {
            match self.exec(s)? {
                Flow::Normal => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Normal)
    }

    fn frame(&mut self) -> &mut Frame {
        self.frames.last_mut().expect("inside a guest function")
    }

    fn exec(&mut self, s: &Stmt) -> Ev<Flow> {
        match s {
            Stmt::Expr(e) => {
                self.eval(e)?;
                Ok(Flow::Normal)
            }
            Stmt::Local {
                id,
                init,
                zero,
                span,
            } => {
                self.tick(*span)?;
                let p = self.local_ptr(*id, *span)?;
                let ty = self.prog.functions[self.frames.last().expect("frame").function].locals
                    [*id]
                    .ty
                    .clone();
                if *zero {
                    let r = self.store_zero(&p, &ty);
                    self.at(r, *span)?;
                }
                self.run_init(&p, init)?;
                Ok(Flow::Normal)
            }
            Stmt::StaticLocal(gid) => {
                self.init_global(*gid)?;
                Ok(Flow::Normal)
            }
            Stmt::Block(b) => self.exec_block(b),
            Stmt::If(c, t, e) => {
                if self.eval(c)?.truthy() {
                    self.exec(t)
                } else if let Some(e) = e {
                    self.exec(e)
                } else {
                    Ok(Flow::Normal)
                }
            }
            Stmt::While(c, body) => {
                while self.eval(c)?.truthy() {
                    match self.exec(body)? {
                        Flow::Break => break,
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        _ => {}
                    }
                }
                Ok(Flow::Normal)
            }
            Stmt::DoWhile(body, c) => {
                loop {
                    match self.exec(body)? {
                        Flow::Break => break,
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        _ => {}
                    }
                    if !self.eval(c)?.truthy() {
                        break;
                    }
                }
                Ok(Flow::Normal)
            }
            Stmt::For(init, cond, step, body) => {
                if let Flow::Return(v) = self.exec_block(init)? {
                    return Ok(Flow::Return(v));
                }
                loop {
                    if let Some(c) = cond {
                        if !self.eval(c)?.truthy() {
                            break;
                        }
                    }
                    match self.exec(body)? {
                        Flow::Break => break,
                        Flow::Return(v) => return Ok(Flow::Return(v)),
                        _ => {}
                    }
                    if let Some(e) = step {
                        self.eval(e)?;
                    }
                }
                Ok(Flow::Normal)
            }
            Stmt::Return(e, span) => {
                self.tick(*span)?;
                let v = match e {
                    Some(e) => self.eval(e)?,
                    None => Value::Void,
                };
                Ok(Flow::Return(v))
            }
            Stmt::Break => Ok(Flow::Break),
            Stmt::Continue => Ok(Flow::Continue),
        }
    }

    fn store_zero(&mut self, p: &GuestPointer, ty: &GuestType) -> Result<(), Violation> {
        match ty {
            GuestType::Array(elem, n) => {
                let es = elem.size().unwrap_or(0) as i64;
                let z = Value::zero(elem);
                for i in 0..*n as i64 {
                    self.rt.store(&p.offset_by(i * es), elem, z.clone())?;
                }
                Ok(())
            }
            t => self.rt.store(p, t, Value::zero(t)),
        }
    }

    fn local_ptr(&mut self, id: usize, span: Span) -> Ev<GuestPointer> {
        let frame = self.frames.last().expect("frame");
        if let Some(obj) = &frame.locals[id] {
            return Ok(GuestPointer::to(obj.clone(), 0));
        }
        let ty = self.prog.functions[frame.function].locals[id].ty.clone();
        let p = self.allocate_for(&ty, LocationKind::Automatic);
        let p = self.at(p, span)?;
        let obj = p.pointee.clone().expect("fresh object");
        let frame = self.frame();
        frame.locals[id] = Some(obj.clone());
        frame.owned.push(obj);
        Ok(p)
    }

    // ---- expressions ----

    fn lvalue(&mut self, e: &Expr) -> Ev<GuestPointer> {
        match &e.kind {
            ExprKind::Str(id) => self.string_ptr(*id, e.span),
            ExprKind::Local(id) => self.local_ptr(*id, e.span),
            ExprKind::Global(id) => self.global_ptr(*id, e.span),
            ExprKind::Func(id) => Ok(self.function_ptr(*id)),
            ExprKind::Deref(p) => Ok(self.eval(p)?.as_ptr()),
            ExprKind::Member(base, off) => Ok(self.lvalue(base)?.offset_by(*off as i64)),
            _ => Err(self.diag(
                DiagnosticKind::InternalLimit,
                e.span,
                "expression is not an lvalue",
            )),
        }
    }

    pub fn eval(&mut self, e: &Expr) -> Ev<Value> {
        stacker::maybe_grow(128 * 1024, 4 * 1024 * 1024, || self.eval_inner(e))
    }

    fn eval_inner(&mut self, e: &Expr) -> Ev<Value> {
        self.tick(e.span)?;
        match &e.kind {
            ExprKind::Const(v) => Ok(v.clone()),
            ExprKind::Str(_)
            | ExprKind::Local(_)
            | ExprKind::Global(_)
            | ExprKind::Deref(_)
            | ExprKind::Member(..) => {
                // An lvalue in rvalue position without an explicit load only
                // occurs for designators used as addresses.
                Ok(Value::Ptr(self.lvalue(e)?))
            }
            ExprKind::Func(id) => Ok(Value::Ptr(self.function_ptr(*id))),
            ExprKind::Load(x) => {
                let p = self.lvalue(x)?;
                let r = self.rt.load(&p, &x.ty);
                self.at(r, e.span).map(|v| normalized(v, &x.ty))
            }
            ExprKind::AddrOf(x) => Ok(Value::Ptr(self.lvalue(x)?)),
            ExprKind::Cast(x) => {
                let v = self.eval(x)?;
                Ok(ops::convert(v, &x.ty, &e.ty))
            }
            ExprKind::Unary(op, x) => {
                let v = self.eval(x)?;
                Ok(ops::unary(*op, &v, &e.ty))
            }
            ExprKind::Binary(op, a, b) => {
                let x = self.eval(a)?;
                let y = self.eval(b)?;
                let r = ops::binary(*op, &x, &y, &a.ty);
                self.at(r, e.span)
            }
            ExprKind::PtrAdd(p, i, scale) => {
                let p = self.eval(p)?.as_ptr();
                let i = self.eval(i)?.as_int();
                Ok(Value::Ptr(p.offset_by(i.wrapping_mul(*scale))))
            }
            ExprKind::PtrDiff(a, b, scale) => {
                let a = self.eval(a)?.as_ptr();
                let b = self.eval(b)?.as_ptr();
                if !a.same_object(&b) {
                    return Err(self.diag(
                        DiagnosticKind::TypeViolation,
                        e.span,
                        "subtraction of pointers into different objects",
                    ));
                }
                Ok(Value::Int(
                    a.offset.wrapping_sub(b.offset) / (*scale).max(1),
                ))
            }
            ExprKind::PtrCmp(op, a, b) => {
                let a = self.eval(a)?.as_ptr();
                let b = self.eval(b)?.as_ptr();
                let eq = a.same_object(&b) && a.offset == b.offset;
                use crate::frontend::hir::ArithOp as A;
                let r = match op {
                    A::Eq => eq,
                    A::Ne => !eq,
                    _ => {
                        let ord = a.order_key().cmp(&b.order_key());
                        match op {
                            A::Lt => ord.is_lt(),
                            A::Gt => ord.is_gt(),
                            A::Le => ord.is_le(),
                            _ => ord.is_ge(),
                        }
                    }
                };
                Ok(ops::bool_value(r))
            }
            ExprKind::And(a, b) => {
                let r = self.eval(a)?.truthy() && self.eval(b)?.truthy();
                Ok(ops::bool_value(r))
            }
            ExprKind::Or(a, b) => {
                let r = self.eval(a)?.truthy() || self.eval(b)?.truthy();
                Ok(ops::bool_value(r))
            }
            ExprKind::Assign(target, rhs) => {
                let p = self.lvalue(target)?;
                let v = self.eval(rhs)?;
                let r = self.rt.store(&p, &target.ty, v.clone());
                self.at(r, e.span)?;
                Ok(v)
            }
            ExprKind::CompoundAssign {
                op,
                target,
                rhs,
                op_ty,
                scale,
            } => {
                let p = self.lvalue(target)?;
                let old = self.rt.load(&p, &target.ty);
                let old = self.at(old, e.span)?;
                let rv = self.eval(rhs)?;
                let new = match scale {
                    Some(s) => {
                        let sign = if *op == crate::frontend::hir::ArithOp::Sub {
                            -1
                        } else {
                            1
                        };
                        Value::Ptr(
                            old.as_ptr()
                                .offset_by(rv.as_int().wrapping_mul(*s).wrapping_mul(sign)),
                        )
                    }
                    None => {
                        let lhs = ops::convert(old, &target.ty, op_ty);
                        let r = ops::binary(*op, &lhs, &rv, op_ty);
                        let r = self.at(r, e.span)?;
                        ops::convert(r, op_ty, &target.ty)
                    }
                };
                let r = self.rt.store(&p, &target.ty, new.clone());
                self.at(r, e.span)?;
                Ok(new)
            }
            ExprKind::IncDec {
                target,
                delta,
                post,
                scale,
            } => {
                let p = self.lvalue(target)?;
                let old = self.rt.load(&p, &target.ty);
                let old = self.at(old, e.span)?;
                let new = match (scale, &old) {
                    (Some(s), _) => Value::Ptr(old.as_ptr().offset_by(delta * s)),
                    (None, Value::Float(f)) => Value::Float(f + *delta as f64),
                    (None, v) => {
                        Value::Int(ops::normalize(v.as_int().wrapping_add(*delta), &target.ty))
                    }
                };
                let r = self.rt.store(&p, &target.ty, new.clone());
                self.at(r, e.span)?;
                Ok(if *post { old } else { new })
            }
            ExprKind::Cond(c, a, b) => {
                if self.eval(c)?.truthy() {
                    self.eval(a)
                } else {
                    self.eval(b)
                }
            }
            ExprKind::Call { callee, args } => self.eval_call(callee, args, e),
            ExprKind::Builtin(b, args) => self.builtin(*b, args, e),
            ExprKind::TypeDesc(id) => Ok(Value::Ptr(self.type_desc_ptr(*id))),
            ExprKind::Comma(a, b) => {
                self.eval(a)?;
                self.eval(b)
            }
            ExprKind::VaArg(list) => {
                let view = self.va_view(list)?;
                let r = view.borrow_mut().next_arg(&e.ty, &mut self.rt);
                self.at(r, e.span).map(|v| normalized(v, &e.ty))
            }
        }
    }

    fn va_view(&mut self, list: &Expr) -> Ev<Rc<RefCell<VarargsView>>> {
        match self.eval(list)? {
            Value::VaList(v) => Ok(v),
            _ => Err(self.diag(
                DiagnosticKind::VarargViolation,
                list.span,
                "va_list was not initialized",
            )),
        }
    }

    fn eval_call(&mut self, callee: &Callee, args: &[Expr], e: &Expr) -> Ev<Value> {
        let (fid, indirect_sig) = match callee {
            Callee::Direct(id) => (*id, None),
            Callee::Indirect(f) => {
                let p = self.eval(f)?.as_ptr();
                let fid = self.resolve_function(&p, e.span)?;
                (fid, f.ty.signature().cloned())
            }
        };
        let mut vals = Vec::with_capacity(args.len());
        for a in args {
            vals.push((self.eval(a)?, a.ty.clone()));
        }
        if let Some(sig) = indirect_sig {
            let target = &self.prog.functions[fid];
            if !target.sig.matches_kinds(&sig) {
                return Err(self.diag(
                    DiagnosticKind::TypeViolation,
                    e.span,
                    format!(
                        "indirect call of `{}` ({}) through a pointer of type {}",
                        target.name,
                        target.ty(),
                        GuestType::Function(sig.clone())
                    ),
                ));
            }
        }
        let v = self.call_function(fid, vals, e.span)?;
        // A kind-compatible callee may still differ in signedness.
        Ok(ops::convert(
            v,
            &self.prog.functions[fid].sig.ret.clone(),
            &e.ty,
        ))
    }

    fn resolve_function(&self, p: &GuestPointer, span: Span) -> Ev<FuncId> {
        let Some(obj) = &p.pointee else {
            return Err(self.diag(
                DiagnosticKind::NullDereference,
                span,
                "call through a NULL function pointer",
            ));
        };
        let o = obj.borrow();
        if o.location == LocationKind::Invalid {
            return Err(self.diag(
                DiagnosticKind::UseAfterFree,
                span,
                "call through a dangling pointer",
            ));
        }
        match o.function() {
            Some(f) if p.offset == 0 => Ok(f),
            _ => Err(self.diag(
                DiagnosticKind::TypeViolation,
                span,
                format!(
                    "call through a pointer to object #{} which is not a function",
                    o.id
                ),
            )),
        }
    }

    fn type_arg(&self, p: &GuestPointer) -> Option<Rc<TypeExpr>> {
        p.pointee
            .as_ref()
            .and_then(|o| o.borrow().type_desc().cloned())
    }

    fn builtin(&mut self, b: Builtin, args: &[Expr], e: &Expr) -> Ev<Value> {
        let span = e.span;
        match b {
            Builtin::VaStart => {
                let p = self.lvalue(&args[0])?;
                let view = match self.frames.last() {
                    Some(f) => VarargsView::start(f),
                    None => VarargsView::default(),
                };
                let r = self.rt.store(
                    &p,
                    &GuestType::VaList,
                    Value::VaList(Rc::new(RefCell::new(view))),
                );
                self.at(r, span)?;
                return Ok(Value::Void);
            }
            Builtin::VaEnd => {
                let p = self.lvalue(&args[0])?;
                let r = self.rt.load(&p, &GuestType::VaList);
                if let Value::VaList(v) = self.at(r, span)? {
                    v.borrow_mut().end();
                }
                return Ok(Value::Void);
            }
            Builtin::VaCopy => {
                let p = self.lvalue(&args[0])?;
                let src = self.va_view(&args[1])?;
                let copy = src.borrow().clone();
                let r = self.rt.store(
                    &p,
                    &GuestType::VaList,
                    Value::VaList(Rc::new(RefCell::new(copy))),
                );
                self.at(r, span)?;
                return Ok(Value::Void);
            }
            _ => {}
        }
        let mut v = Vec::with_capacity(args.len());
        for a in args {
            v.push(self.eval(a)?);
        }
        let ptr = |i: usize| v[i].as_ptr();
        Ok(match b {
            Builtin::SizeLeftRaw | Builtin::SizeRightRaw => {
                let p = ptr(0);
                if !introspection::is_legal(&p) {
                    self.rt.stats.illegal_primitive_queries += 1;
                }
                Value::Int(if b == Builtin::SizeLeftRaw {
                    introspection::size_left_raw(&p)
                } else {
                    introspection::size_right_raw(&p)
                })
            }
            Builtin::Location => Value::Int(introspection::location(&ptr(0)).code()),
            Builtin::TryCast => match self.type_arg(&ptr(1)) {
                Some(t) => Value::Ptr(introspection::try_cast(&ptr(0), &t)),
                None => Value::Ptr(GuestPointer::null()),
            },
            Builtin::CountVarargs => {
                Value::Int(self.frames.last().map_or(0, introspection::count_varargs) as i64)
            }
            Builtin::GetVarargRaw => Value::Ptr(match self.frames.last() {
                Some(f) => introspection::get_vararg_raw(f, v[0].as_int()),
                None => GuestPointer::null(),
            }),
            Builtin::GetVararg => {
                let t = self.type_arg(&ptr(1));
                Value::Ptr(match (self.frames.last(), t) {
                    (Some(f), Some(t)) => introspection::get_vararg(f, v[0].as_int(), &t),
                    _ => GuestPointer::null(),
                })
            }
            Builtin::Abort => {
                return Err(Stop::Exit {
                    status: ABORT_STATUS,
                    guest_abort: true,
                })
            }
            Builtin::Exit => {
                return Err(Stop::Exit {
                    status: v[0].as_int() as i32,
                    guest_abort: false,
                })
            }
            Builtin::HostPutchar => {
                let c = v[1].as_int() as u8;
                match v[0].as_int() {
                    1 => self.stdout.push(c),
                    2 => self.stderr.push(c),
                    _ => return Ok(Value::Int(-1)),
                }
                Value::Int(c as i64)
            }
            Builtin::HostGetchar => match self.stdin.get(self.stdin_pos) {
                Some(c) => {
                    self.stdin_pos += 1;
                    Value::Int(*c as i64)
                }
                None => Value::Int(-1),
            },
            Builtin::HostMalloc => {
                let n = v[0].as_int() as u64;
                if n > self.limits.max_allocation {
                    Value::Ptr(GuestPointer::null())
                } else {
                    let r = self.rt.allocate_untyped(n);
                    Value::Ptr(self.at(r, span)?)
                }
            }
            Builtin::HostFree => {
                let r = self.rt.free_object(&ptr(0));
                self.at(r, span)?;
                Value::Void
            }
            // Byte copies report failure to the prelude instead of aborting,
            // and leave the destination untouched when they fail.
            Builtin::HostMemcpy => {
                let r = self.rt.copy_bytes(&ptr(0), &ptr(1), v[2].as_int() as u64);
                Value::Int(if r.is_ok() { 0 } else { -1 })
            }
            Builtin::HostMemset => {
                let r = self
                    .rt
                    .fill_bytes(&ptr(0), v[1].as_int() as u8, v[2].as_int() as u64);
                Value::Int(if r.is_ok() { 0 } else { -1 })
            }
            Builtin::HostFmtDouble => {
                let (buf, cap) = (ptr(0), v[1].as_int() as u64);
                let prec = v[3].as_int().clamp(0, 40) as usize;
                let text = format_double(v[2].as_float(), prec);
                let bytes = text.as_bytes();
                for (i, c) in bytes.iter().chain(std::iter::once(&0u8)).enumerate() {
                    if i as u64 >= cap {
                        break;
                    }
                    let r = self.rt.store(
                        &buf.offset_by(i as i64),
                        &GuestType::Char,
                        Value::Int(*c as i8 as i64),
                    );
                    self.at(r, span)?;
                }
                Value::Int(bytes.len() as i64)
            }
            Builtin::VaCount => match &v[0] {
                Value::VaList(l) => Value::Int(l.borrow().remaining() as i64),
                _ => Value::Int(0),
            },
            Builtin::VaPeek => match (&v[0], self.type_arg(&ptr(2))) {
                (Value::VaList(l), Some(t)) => Value::Ptr(l.borrow().peek(v[1].as_int(), &t)),
                _ => Value::Ptr(GuestPointer::null()),
            },
            Builtin::VaStart | Builtin::VaEnd | Builtin::VaCopy => unreachable!("handled above"),
        })
    }
}

/// Signed and unsigned types of one width share a slot; reads take the
/// signedness of the access type.
fn normalized(v: Value, ty: &GuestType) -> Value {
    match v {
        Value::Int(i) => Value::Int(ops::normalize(i, ty)),
        v => v,
    }
}

/// `%.<prec>f` formatting.
pub fn format_double(x: f64, prec: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    format!("{x:.prec$}")
}

/// Runs a compiled program to completion.
pub fn run_program(prog: &Program, config: &ExecConfig) -> ExecOutcome {
    let mut interp = Interpreter::new(prog, config.stdin.clone(), config.limits.clone());
    let argv = if config.argv.is_empty() {
        vec![prog
            .files
            .get(1)
            .cloned()
            .unwrap_or_else(|| "a.out".to_string())]
    } else {
        config.argv.clone()
    };
    let result = interp.run_main(&argv);
    let (termination, note) = match result {
        Ok(status) => (Termination::Exit(status), None),
        Err(Stop::Exit {
            status,
            guest_abort,
        }) => (
            Termination::Exit(status),
            guest_abort.then(|| "program called abort()".to_string()),
        ),
        Err(Stop::Diag(d)) => (Termination::Aborted(d), None),
    };
    let errno = interp.read_int_global("errno").unwrap_or(0);
    ExecOutcome {
        termination,
        stdout: std::mem::take(&mut interp.stdout),
        stderr: std::mem::take(&mut interp.stderr),
        note,
        errno,
        stats: interp.rt.stats.clone(),
        steps: interp.steps,
        frames_left: interp.frames.len(),
    }
}

/// Compiles and runs `source`, turning front-end errors into an aborted
/// outcome.
pub fn run_source(source: &str, file_name: &str, config: &ExecConfig) -> ExecOutcome {
    match crate::frontend::compile(source, file_name) {
        Ok(prog) => run_program(&prog, config),
        Err(d) => ExecOutcome {
            termination: Termination::Aborted(d),
            stdout: Vec::new(),
            stderr: Vec::new(),
            note: None,
            errno: 0,
            stats: AccessStats::default(),
            steps: 0,
            frames_left: 0,
        },
    }
}

impl From<Stop> for Diagnostic {
    fn from(s: Stop) -> Self {
        match s {
            Stop::Diag(d) => d,
            Stop::Exit { status, .. } => Diagnostic::new(
                DiagnosticKind::InternalLimit,
                SourceSpan::new("<host>", 1, 1),
                format!("program exited with status {status}"),
            ),
        }
    }
}
