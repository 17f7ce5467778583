//! Recursive-descent parser for MiniC.

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::FrontError;
use crate::diag::{DiagnosticKind, Span};

/// Identifiers that name builtin types without a `typedef`.
pub const BUILTIN_TYPE_NAMES: &[&str] = &["size_t", "rsize_t", "bool", "FILE", "va_list", "Type"];

const UNSUPPORTED: &[&str] = &[
    "switch", "case", "goto", "typedef", "union", "float", "short", "enum",
];

pub fn parse_source(src: &str, file: u16) -> Result<TranslationUnit, FrontError> {
    let tokens = tokenize(src, file)
        .map_err(|e| FrontError::new(DiagnosticKind::ParseError, e.span, e.message))?;
    let mut p = Parser { tokens, pos: 0 };
    let mut items = Vec::new();
    while !p.at_eof() {
        p.item(&mut items)?;
    }
    Ok(TranslationUnit { items })
}

type PResult<T> = Result<T, FrontError>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    fn advance(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, k: &str) -> bool {
        if self.is_keyword(k) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(FrontError::new(
            DiagnosticKind::ParseError,
            self.span(),
            message,
        ))
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int { value, .. } => format!("`{value}`"),
            Tok::Float(f) => format!("`{f}`"),
            Tok::Char(_) => "character literal".into(),
            Tok::Str(_) => "string literal".into(),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of file".into(),
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.error(format!("expected `{p}`, found {}", self.describe()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_reserved(&s) => {
                self.advance();
                Ok(s)
            }
            _ => self.error(format!("expected identifier, found {}", self.describe())),
        }
    }

    fn reject_unsupported(&self) -> PResult<()> {
        if let Tok::Ident(s) = self.peek() {
            if UNSUPPORTED.contains(&s.as_str()) {
                return self.error(format!("`{s}` is not supported in MiniC"));
            }
        }
        Ok(())
    }

    fn starts_type_at(&self, k: usize) -> bool {
        match self.peek_at(k) {
            Tok::Ident(s) => {
                matches!(
                    s.as_str(),
                    "void"
                        | "char"
                        | "int"
                        | "long"
                        | "double"
                        | "unsigned"
                        | "signed"
                        | "struct"
                        | "const"
                ) || BUILTIN_TYPE_NAMES.contains(&s.as_str())
            }
            _ => false,
        }
    }

    fn starts_declaration(&self) -> bool {
        self.starts_type_at(0) || self.is_keyword("static") || self.is_keyword("extern")
    }

    // ---- declarations ----

    fn item(&mut self, items: &mut Vec<Item>) -> PResult<()> {
        self.reject_unsupported()?;
        let span = self.span();
        let (is_static, base, struct_def) = self.specifiers(true)?;
        if let Some(def) = struct_def {
            items.push(Item::Struct(def));
            if self.eat_punct(";") {
                return Ok(());
            }
        } else if let BaseType::Struct(name) = &base {
            if self.eat_punct(";") {
                items.push(Item::Struct(StructItem {
                    name: name.clone(),
                    fields: None,
                    span,
                }));
                return Ok(());
            }
        }
        let decl_span = self.span();
        let declarator = self.declarator(false)?;
        if matches!(
            innermost_suffix(&declarator),
            Some(Declarator::Function(..))
        ) && self.is_punct("{")
        {
            let body = self.block()?;
            items.push(Item::Function(FunctionItem {
                is_static,
                base,
                declarator,
                body: Some(body),
                span: decl_span,
            }));
            return Ok(());
        }
        if is_function_declarator(&declarator) && self.is_punct(";") {
            self.advance();
            items.push(Item::Function(FunctionItem {
                is_static,
                base,
                declarator,
                body: None,
                span: decl_span,
            }));
            return Ok(());
        }
        let decl = self.rest_of_declaration(is_static, base, declarator, decl_span, span)?;
        items.push(Item::Globals(decl));
        Ok(())
    }

    fn rest_of_declaration(
        &mut self,
        is_static: bool,
        base: BaseType,
        first: Declarator,
        first_span: Span,
        span: Span,
    ) -> PResult<Declaration> {
        let mut vars = Vec::new();
        let mut declarator = first;
        let mut dspan = first_span;
        loop {
            let init = if self.eat_punct("=") {
                Some(self.initializer()?)
            } else {
                None
            };
            vars.push(InitDeclarator {
                declarator,
                init,
                span: dspan,
            });
            if !self.eat_punct(",") {
                break;
            }
            dspan = self.span();
            declarator = self.declarator(false)?;
        }
        self.expect_punct(";")?;
        Ok(Declaration {
            is_static,
            base,
            vars,
            span,
        })
    }

    fn initializer(&mut self) -> PResult<Initializer> {
        if self.eat_punct("{") {
            let mut list = Vec::new();
            while !self.is_punct("}") {
                list.push(self.initializer()?);
                if !self.eat_punct(",") {
                    break;
                }
            }
            self.expect_punct("}")?;
            Ok(Initializer::List(list))
        } else {
            Ok(Initializer::Expr(self.assignment()?))
        }
    }

    /// Storage class, qualifiers, and base type. Struct definitions are
    /// only accepted where `allow_struct_def` is set (file scope).
    fn specifiers(
        &mut self,
        allow_struct_def: bool,
    ) -> PResult<(bool, BaseType, Option<StructItem>)> {
        let mut is_static = false;
        let mut signedness: Option<bool> = None;
        let mut longs = 0;
        let mut core: Option<&'static str> = None;
        let mut base: Option<BaseType> = None;
        let mut struct_def = None;
        let start = self.span();
        loop {
            self.reject_unsupported()?;
            let Tok::Ident(word) = self.peek().clone() else {
                break;
            };
            match word.as_str() {
                "static" => is_static = true,
                "extern" | "const" | "volatile" | "inline" => {}
                "unsigned" => signedness = Some(false),
                "signed" => signedness = Some(true),
                "long" => longs += 1,
                "void" | "char" | "int" | "double" if core.is_none() && base.is_none() => {
                    core = Some(match word.as_str() {
                        "void" => "void",
                        "char" => "char",
                        "int" => "int",
                        _ => "double",
                    })
                }
                "struct" if core.is_none() && base.is_none() => {
                    let span = self.span();
                    self.advance();
                    let name = self.ident()?;
                    if self.is_punct("{") {
                        if !allow_struct_def {
                            return self.error("struct definitions are only allowed at file scope");
                        }
                        self.advance();
                        let mut fields = Vec::new();
                        while !self.eat_punct("}") {
                            let (st, fbase, _) = self.specifiers(false)?;
                            if st {
                                return self.error("struct fields cannot be static");
                            }
                            let mut declarators = vec![self.declarator(false)?];
                            while self.eat_punct(",") {
                                declarators.push(self.declarator(false)?);
                            }
                            self.expect_punct(";")?;
                            fields.push(FieldDecl {
                                base: fbase,
                                declarators,
                            });
                        }
                        struct_def = Some(StructItem {
                            name: name.clone(),
                            fields: Some(fields),
                            span,
                        });
                    }
                    base = Some(BaseType::Struct(name));
                    continue;
                }
                w if BUILTIN_TYPE_NAMES.contains(&w)
                    && core.is_none()
                    && base.is_none()
                    && longs == 0
                    && signedness.is_none() =>
                {
                    base = Some(BaseType::Named(w.to_string()));
                }
                _ => break,
            }
            self.advance();
        }
        let base = match (base, core, signedness, longs) {
            (Some(b), None, None, 0) => b,
            (Some(_), ..) => {
                return Err(FrontError::new(
                    DiagnosticKind::ParseError,
                    start,
                    "invalid type specifier combination",
                ))
            }
            (None, Some("void"), None, 0) => BaseType::Void,
            (None, Some("char"), _, 0) => BaseType::Char,
            (None, Some("double"), None, 0) => BaseType::Double,
            (None, Some("int") | None, s, 0) if core.is_some() || s.is_some() => {
                if s == Some(false) {
                    BaseType::UInt
                } else {
                    BaseType::Int
                }
            }
            (None, Some("int") | None, s, 1 | 2) => {
                if s == Some(false) {
                    BaseType::ULong
                } else {
                    BaseType::Long
                }
            }
            (None, None, None, 0) => {
                return Err(FrontError::new(
                    DiagnosticKind::ParseError,
                    start,
                    format!("expected a type, found {}", self.describe()),
                ))
            }
            _ => {
                return Err(FrontError::new(
                    DiagnosticKind::ParseError,
                    start,
                    "invalid type specifier combination",
                ))
            }
        };
        Ok((is_static, base, struct_def))
    }

    fn declarator(&mut self, is_abstract: bool) -> PResult<Declarator> {
        if self.eat_punct("*") {
            while self.eat_keyword("const") || self.eat_keyword("volatile") {}
            return Ok(Declarator::Pointer(Box::new(self.declarator(is_abstract)?)));
        }
        let mut d = if self.is_punct("(") && self.paren_starts_declarator(is_abstract) {
            self.advance();
            let inner = self.declarator(is_abstract)?;
            self.expect_punct(")")?;
            inner
        } else if let Tok::Ident(s) = self.peek() {
            if is_reserved(s) || (is_abstract && self.starts_type_at(0)) {
                if is_abstract {
                    Declarator::Name(None)
                } else {
                    return self.error(format!("expected identifier, found {}", self.describe()));
                }
            } else {
                let name = self.ident()?;
                Declarator::Name(Some(name))
            }
        } else if is_abstract {
            Declarator::Name(None)
        } else {
            return self.error(format!("expected identifier, found {}", self.describe()));
        };
        loop {
            if self.eat_punct("[") {
                let len = if self.is_punct("]") {
                    None
                } else {
                    Some(Box::new(self.conditional()?))
                };
                self.expect_punct("]")?;
                d = Declarator::Array(Box::new(d), len);
            } else if self.is_punct("(") {
                self.advance();
                let (params, variadic) = self.params()?;
                d = Declarator::Function(Box::new(d), params, variadic);
            } else {
                return Ok(d);
            }
        }
    }

    /// At `(` inside a declarator: nested declarator or parameter list?
    fn paren_starts_declarator(&self, is_abstract: bool) -> bool {
        match self.peek_at(1) {
            Tok::Punct("*") | Tok::Punct("(") => true,
            Tok::Punct("[") => is_abstract,
            Tok::Ident(_) => !is_abstract && !self.starts_type_at(1),
            _ => false,
        }
    }

    fn params(&mut self) -> PResult<(Vec<Param>, bool)> {
        let mut params = Vec::new();
        if self.eat_punct(")") {
            return Ok((params, false));
        }
        if self.is_keyword("void") && matches!(self.peek_at(1), Tok::Punct(")")) {
            self.advance();
            self.advance();
            return Ok((params, false));
        }
        loop {
            if self.eat_punct("...") {
                self.expect_punct(")")?;
                return Ok((params, true));
            }
            let span = self.span();
            let (st, base, _) = self.specifiers(false)?;
            if st {
                return self.error("parameters cannot be static");
            }
            let declarator = self.declarator(true)?;
            params.push(Param {
                base,
                declarator,
                span,
            });
            if self.eat_punct(")") {
                return Ok((params, false));
            }
            self.expect_punct(",")?;
        }
    }

    fn type_name(&mut self) -> PResult<TypeName> {
        let (st, base, _) = self.specifiers(false)?;
        if st {
            return self.error("storage class in a type name");
        }
        let declarator = self.declarator(true)?;
        if declarator.name().is_some() {
            return self.error("unexpected identifier in a type name");
        }
        Ok(TypeName { base, declarator })
    }

    // ---- statements ----

    fn block(&mut self) -> PResult<Block> {
        self.expect_punct("{")?;
        let mut stmts = Vec::new();
        while !self.eat_punct("}") {
            if self.at_eof() {
                return self.error("unexpected end of file inside a block");
            }
            stmts.push(self.statement()?);
        }
        Ok(stmts)
    }

    fn statement(&mut self) -> PResult<Stmt> {
        self.reject_unsupported()?;
        let span = self.span();
        let kind = if self.is_punct("{") {
            StmtKind::Block(self.block()?)
        } else if self.eat_punct(";") {
            StmtKind::Empty
        } else if self.starts_declaration() {
            StmtKind::Decl(self.local_declaration()?)
        } else if self.eat_keyword("if") {
            self.expect_punct("(")?;
            let cond = self.expression()?;
            self.expect_punct(")")?;
            let then = Box::new(self.statement()?);
            let els = if self.eat_keyword("else") {
                Some(Box::new(self.statement()?))
            } else {
                None
            };
            StmtKind::If(cond, then, els)
        } else if self.eat_keyword("while") {
            self.expect_punct("(")?;
            let cond = self.expression()?;
            self.expect_punct(")")?;
            StmtKind::While(cond, Box::new(self.statement()?))
        } else if self.eat_keyword("do") {
            let body = Box::new(self.statement()?);
            if !self.eat_keyword("while") {
                return self.error("expected `while` after do-body");
            }
            self.expect_punct("(")?;
            let cond = self.expression()?;
            self.expect_punct(")")?;
            self.expect_punct(";")?;
            StmtKind::DoWhile(body, cond)
        } else if self.eat_keyword("for") {
            self.expect_punct("(")?;
            let init = if self.eat_punct(";") {
                None
            } else if self.starts_declaration() {
                let s = self.span();
                Some(Box::new(Stmt {
                    kind: StmtKind::Decl(self.local_declaration()?),
                    span: s,
                }))
            } else {
                let s = self.span();
                let e = self.expression()?;
                self.expect_punct(";")?;
                Some(Box::new(Stmt {
                    kind: StmtKind::Expr(e),
                    span: s,
                }))
            };
            let cond = if self.is_punct(";") {
                None
            } else {
                Some(self.expression()?)
            };
            self.expect_punct(";")?;
            let step = if self.is_punct(")") {
                None
            } else {
                Some(self.expression()?)
            };
            self.expect_punct(")")?;
            StmtKind::For(init, cond, step, Box::new(self.statement()?))
        } else if self.eat_keyword("return") {
            let value = if self.is_punct(";") {
                None
            } else {
                Some(self.expression()?)
            };
            self.expect_punct(";")?;
            StmtKind::Return(value)
        } else if self.eat_keyword("break") {
            self.expect_punct(";")?;
            StmtKind::Break
        } else if self.eat_keyword("continue") {
            self.expect_punct(";")?;
            StmtKind::Continue
        } else if self.is_keyword("else") {
            return self.error("`else` without a matching `if`");
        } else {
            let e = self.expression()?;
            self.expect_punct(";")?;
            StmtKind::Expr(e)
        };
        Ok(Stmt { kind, span })
    }

    fn local_declaration(&mut self) -> PResult<Declaration> {
        let span = self.span();
        let (is_static, base, _) = self.specifiers(false)?;
        let dspan = self.span();
        let first = self.declarator(false)?;
        self.rest_of_declaration(is_static, base, first, dspan, span)
    }

    // ---- expressions ----

    fn expression(&mut self) -> PResult<Expr> {
        let mut e = self.assignment()?;
        while self.is_punct(",") {
            let span = self.span();
            self.advance();
            let rhs = self.assignment()?;
            e = Expr::new(ExprKind::Comma(Box::new(e), Box::new(rhs)), span);
        }
        Ok(e)
    }

    fn assignment(&mut self) -> PResult<Expr> {
        let lhs = self.conditional()?;
        let op = match self.peek() {
            Tok::Punct("=") => None,
            Tok::Punct("+=") => Some(BinaryOp::Add),
            Tok::Punct("-=") => Some(BinaryOp::Sub),
            Tok::Punct("*=") => Some(BinaryOp::Mul),
            Tok::Punct("/=") => Some(BinaryOp::Div),
            Tok::Punct("%=") => Some(BinaryOp::Rem),
            Tok::Punct("&=") => Some(BinaryOp::BitAnd),
            Tok::Punct("|=") => Some(BinaryOp::BitOr),
            Tok::Punct("^=") => Some(BinaryOp::BitXor),
            Tok::Punct("<<=") => Some(BinaryOp::Shl),
            Tok::Punct(">>=") => Some(BinaryOp::Shr),
            _ => return Ok(lhs),
        };
        let span = self.span();
        self.advance();
        let rhs = self.assignment()?;
        Ok(Expr::new(
            ExprKind::Assign(op, Box::new(lhs), Box::new(rhs)),
            span,
        ))
    }

    fn conditional(&mut self) -> PResult<Expr> {
        let cond = self.binary(1)?;
        if !self.is_punct("?") {
            return Ok(cond);
        }
        let span = self.span();
        self.advance();
        let a = self.expression()?;
        self.expect_punct(":")?;
        let b = self.conditional()?;
        Ok(Expr::new(
            ExprKind::Cond(Box::new(cond), Box::new(a), Box::new(b)),
            span,
        ))
    }

    fn binary_op(&self) -> Option<BinaryOp> {
        let Tok::Punct(p) = self.peek() else {
            return None;
        };
        Some(match *p {
            "*" => BinaryOp::Mul,
            "/" => BinaryOp::Div,
            "%" => BinaryOp::Rem,
            "+" => BinaryOp::Add,
            "-" => BinaryOp::Sub,
            "<<" => BinaryOp::Shl,
            ">>" => BinaryOp::Shr,
            "<" => BinaryOp::Lt,
            ">" => BinaryOp::Gt,
            "<=" => BinaryOp::Le,
            ">=" => BinaryOp::Ge,
            "==" => BinaryOp::Eq,
            "!=" => BinaryOp::Ne,
            "&" => BinaryOp::BitAnd,
            "^" => BinaryOp::BitXor,
            "|" => BinaryOp::BitOr,
            "&&" => BinaryOp::And,
            "||" => BinaryOp::Or,
            _ => return None,
        })
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.binary_op() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            let span = self.span();
            self.advance();
            let rhs = self.binary(prec + 1)?;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let span = self.span();
        let op = match self.peek() {
            Tok::Punct("-") => Some(UnaryOp::Neg),
            Tok::Punct("+") => Some(UnaryOp::Plus),
            Tok::Punct("!") => Some(UnaryOp::Not),
            Tok::Punct("~") => Some(UnaryOp::BitNot),
            Tok::Punct("*") => Some(UnaryOp::Deref),
            Tok::Punct("&") => Some(UnaryOp::AddrOf),
            Tok::Punct("++") => Some(UnaryOp::PreInc),
            Tok::Punct("--") => Some(UnaryOp::PreDec),
            _ => None,
        };
        if let Some(op) = op {
            self.advance();
            let operand = self.unary()?;
            return Ok(Expr::new(ExprKind::Unary(op, Box::new(operand)), span));
        }
        if self.eat_keyword("sizeof") {
            if self.is_punct("(") && self.starts_type_at(1) {
                self.advance();
                let t = self.type_name()?;
                self.expect_punct(")")?;
                return Ok(Expr::new(ExprKind::SizeofType(t), span));
            }
            let operand = self.unary()?;
            return Ok(Expr::new(ExprKind::SizeofExpr(Box::new(operand)), span));
        }
        if self.is_punct("(") && self.starts_type_at(1) {
            self.advance();
            let t = self.type_name()?;
            self.expect_punct(")")?;
            let operand = self.unary()?;
            return Ok(Expr::new(ExprKind::Cast(t, Box::new(operand)), span));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.primary()?;
        loop {
            let span = self.span();
            if self.eat_punct("(") {
                let mut args = Vec::new();
                if !self.eat_punct(")") {
                    loop {
                        args.push(self.assignment()?);
                        if self.eat_punct(")") {
                            break;
                        }
                        self.expect_punct(",")?;
                    }
                }
                e = Expr::new(ExprKind::Call(Box::new(e), args), span);
            } else if self.eat_punct("[") {
                let idx = self.expression()?;
                self.expect_punct("]")?;
                e = Expr::new(ExprKind::Index(Box::new(e), Box::new(idx)), span);
            } else if self.eat_punct(".") {
                let name = self.ident()?;
                e = Expr::new(ExprKind::Member(Box::new(e), name, false), span);
            } else if self.eat_punct("->") {
                let name = self.ident()?;
                e = Expr::new(ExprKind::Member(Box::new(e), name, true), span);
            } else if self.eat_punct("++") {
                e = Expr::new(ExprKind::Unary(UnaryOp::PostInc, Box::new(e)), span);
            } else if self.eat_punct("--") {
                e = Expr::new(ExprKind::Unary(UnaryOp::PostDec, Box::new(e)), span);
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let span = self.span();
        let kind = match self.peek().clone() {
            Tok::Int {
                value,
                unsigned,
                long,
            } => {
                self.advance();
                ExprKind::Int {
                    value,
                    unsigned,
                    long,
                }
            }
            Tok::Float(f) => {
                self.advance();
                ExprKind::Float(f)
            }
            Tok::Char(c) => {
                self.advance();
                ExprKind::Char(c)
            }
            Tok::Str(mut bytes) => {
                self.advance();
                // Adjacent literals concatenate.
                while let Tok::Str(more) = self.peek().clone() {
                    self.advance();
                    bytes.extend(more);
                }
                ExprKind::Str(bytes)
            }
            Tok::Ident(name) if name == "va_arg" && matches!(self.peek_at(1), Tok::Punct("(")) => {
                self.advance();
                self.advance();
                let list = self.assignment()?;
                self.expect_punct(",")?;
                let t = self.type_name()?;
                self.expect_punct(")")?;
                ExprKind::VaArg(Box::new(list), t)
            }
            Tok::Ident(name) if !is_reserved(&name) && !self.starts_type_at(0) => {
                self.advance();
                ExprKind::Ident(name)
            }
            Tok::Punct("(") => {
                self.advance();
                let e = self.expression()?;
                self.expect_punct(")")?;
                return Ok(e);
            }
            _ => return self.error(format!("expected expression, found {}", self.describe())),
        };
        Ok(Expr::new(kind, span))
    }
}

fn is_reserved(s: &str) -> bool {
    matches!(
        s,
        "if" | "else"
            | "while"
            | "do"
            | "for"
            | "return"
            | "break"
            | "continue"
            | "sizeof"
            | "static"
            | "extern"
            | "const"
            | "volatile"
            | "inline"
            | "struct"
            | "void"
            | "char"
            | "int"
            | "long"
            | "double"
            | "unsigned"
            | "signed"
    ) || UNSUPPORTED.contains(&s)
}

/// The outermost derivation applied to the declared name.
fn innermost_suffix(d: &Declarator) -> Option<&Declarator> {
    match d {
        Declarator::Name(_) => None,
        Declarator::Pointer(inner)
        | Declarator::Array(inner, _)
        | Declarator::Function(inner, ..) => match &**inner {
            Declarator::Name(_) => Some(d),
            _ => innermost_suffix(inner),
        },
    }
}

/// True when the declared name has function type (not pointer-to-function).
pub fn is_function_declarator(d: &Declarator) -> bool {
    matches!(innermost_suffix(d), Some(Declarator::Function(..)))
}
