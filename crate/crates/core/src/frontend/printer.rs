//! Canonical pretty-printer. Re-parsing its output yields an equal tree.

use std::fmt::Write;

use super::ast::*;

pub fn print_unit(tu: &TranslationUnit) -> String {
    let mut p = Printer::default();
    for item in &tu.items {
        p.item(item);
    }
    p.out
}

pub fn print_expr(e: &Expr) -> String {
    let mut p = Printer::default();
    p.expr(e);
    p.out
}

#[derive(Default)]
struct Printer {
    out: String,
    indent: usize,
}

fn base_str(b: &BaseType) -> String {
    match b {
        BaseType::Void => "void".into(),
        BaseType::Char => "char".into(),
        BaseType::Int => "int".into(),
        BaseType::UInt => "unsigned int".into(),
        BaseType::Long => "long".into(),
        BaseType::ULong => "unsigned long".into(),
        BaseType::Double => "double".into(),
        BaseType::Struct(n) => format!("struct {n}"),
        BaseType::Named(n) => n.clone(),
    }
}

fn declarator_str(d: &Declarator) -> String {
    match d {
        Declarator::Name(n) => n.clone().unwrap_or_default(),
        Declarator::Pointer(inner) => format!("*{}", declarator_str(inner)),
        Declarator::Array(inner, len) => {
            let len = len.as_ref().map(|e| print_expr(e)).unwrap_or_default();
            format!("{}[{len}]", wrapped(inner))
        }
        Declarator::Function(inner, params, variadic) => {
            let mut ps: Vec<String> = params
                .iter()
                .map(|p| join_decl(&base_str(&p.base), &declarator_str(&p.declarator)))
                .collect();
            if *variadic {
                ps.push("...".into());
            }
            let ps = if ps.is_empty() {
                "void".to_string()
            } else {
                ps.join(", ")
            };
            format!("{}({ps})", wrapped(inner))
        }
    }
}

fn wrapped(inner: &Declarator) -> String {
    match inner {
        Declarator::Pointer(_) => format!("({})", declarator_str(inner)),
        _ => declarator_str(inner),
    }
}

fn join_decl(base: &str, decl: &str) -> String {
    if decl.is_empty() {
        base.to_string()
    } else {
        format!("{base} {decl}")
    }
}

fn type_name_str(t: &TypeName) -> String {
    join_decl(&base_str(&t.base), &declarator_str(&t.declarator))
}

fn escape(bytes: &[u8], quote: u8) -> String {
    let mut s = String::new();
    for &b in bytes {
        match b {
            b'\\' => s.push_str("\\\\"),
            b'\n' => s.push_str("\\n"),
            b'\t' => s.push_str("\\t"),
            _ if b == quote => {
                s.push('\\');
                s.push(b as char);
            }
            0x20..=0x7e => s.push(b as char),
            _ => {
                let _ = write!(s, "\\{b:03o}");
            }
        }
    }
    s
}

impl Printer {
    fn line(&mut self, text: &str) {
        for _ in 0..self.indent {
            self.out.push_str("    ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn item(&mut self, item: &Item) {
        match item {
            Item::Struct(s) => match &s.fields {
                None => self.line(&format!("struct {};", s.name)),
                Some(fields) => {
                    self.line(&format!("struct {} {{", s.name));
                    self.indent += 1;
                    for f in fields {
                        let ds: Vec<String> = f.declarators.iter().map(declarator_str).collect();
                        self.line(&format!("{} {};", base_str(&f.base), ds.join(", ")));
                    }
                    self.indent -= 1;
                    self.line("};");
                }
            },
            Item::Globals(d) => {
                let text = self.declaration(d);
                self.line(&text);
            }
            Item::Function(f) => {
                let head = format!(
                    "{}{}",
                    if f.is_static { "static " } else { "" },
                    join_decl(&base_str(&f.base), &declarator_str(&f.declarator))
                );
                match &f.body {
                    None => self.line(&format!("{head};")),
                    Some(body) => {
                        self.line(&format!("{head} {{"));
                        self.block_body(body);
                        self.line("}");
                    }
                }
            }
        }
    }

    fn declaration(&mut self, d: &Declaration) -> String {
        let vars: Vec<String> = d
            .vars
            .iter()
            .map(|v| {
                let mut s = declarator_str(&v.declarator);
                if let Some(init) = &v.init {
                    s.push_str(" = ");
                    s.push_str(&initializer_str(init));
                }
                s
            })
            .collect();
        format!(
            "{}{} {};",
            if d.is_static { "static " } else { "" },
            base_str(&d.base),
            vars.join(", ")
        )
    }

    fn block_body(&mut self, body: &[Stmt]) {
        self.indent += 1;
        for s in body {
            self.stmt(s);
        }
        self.indent -= 1;
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Decl(d) => {
                let text = self.declaration(d);
                self.line(&text);
            }
            StmtKind::Expr(e) => self.line(&format!("{};", print_expr(e))),
            StmtKind::Block(b) => {
                self.line("{");
                self.block_body(b);
                self.line("}");
            }
            StmtKind::If(c, then, els) => {
                self.line(&format!("if ({})", print_expr(c)));
                self.nested(then);
                if let Some(e) = els {
                    self.line("else");
                    self.nested(e);
                }
            }
            StmtKind::While(c, body) => {
                self.line(&format!("while ({})", print_expr(c)));
                self.nested(body);
            }
            StmtKind::DoWhile(body, c) => {
                self.line("do");
                self.nested(body);
                self.line(&format!("while ({});", print_expr(c)));
            }
            StmtKind::For(init, cond, step, body) => {
                let init = match init.as_deref().map(|s| &s.kind) {
                    None => ";".to_string(),
                    Some(StmtKind::Decl(d)) => self.declaration(d),
                    Some(StmtKind::Expr(e)) => format!("{};", print_expr(e)),
                    Some(_) => ";".to_string(),
                };
                let cond = cond.as_ref().map(print_expr).unwrap_or_default();
                let step = step.as_ref().map(print_expr).unwrap_or_default();
                self.line(&format!("for ({init} {cond}; {step})"));
                self.nested(body);
            }
            StmtKind::Return(None) => self.line("return;"),
            StmtKind::Return(Some(e)) => self.line(&format!("return {};", print_expr(e))),
            StmtKind::Break => self.line("break;"),
            StmtKind::Continue => self.line("continue;"),
            StmtKind::Empty => self.line(";"),
        }
    }

    fn nested(&mut self, s: &Stmt) {
        if matches!(s.kind, StmtKind::Block(_)) {
            self.stmt(s);
        } else {
            self.indent += 1;
            self.stmt(s);
            self.indent -= 1;
        }
    }

    fn expr(&mut self, e: &Expr) {
        let text = expr_str(e);
        self.out.push_str(&text);
    }
}

fn initializer_str(init: &Initializer) -> String {
    match init {
        Initializer::Expr(e) => operand(e, Level::Assign),
        Initializer::List(items) => {
            let parts: Vec<String> = items.iter().map(initializer_str).collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

/// Contexts an operand may appear in, from loosest to tightest.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Comma,
    Assign,
    Cond,
    Binary(u8),
    Unary,
    Postfix,
}

fn level_of(e: &Expr) -> Level {
    match &e.kind {
        ExprKind::Comma(..) => Level::Comma,
        ExprKind::Assign(..) => Level::Assign,
        ExprKind::Cond(..) => Level::Cond,
        ExprKind::Binary(op, ..) => Level::Binary(op.precedence()),
        ExprKind::Unary(UnaryOp::PostInc | UnaryOp::PostDec, _) => Level::Postfix,
        ExprKind::Unary(..)
        | ExprKind::Cast(..)
        | ExprKind::SizeofExpr(_)
        | ExprKind::SizeofType(_) => Level::Unary,
        _ => Level::Postfix,
    }
}

/// Renders `e`, parenthesized unless it binds at least as tightly as `min`.
fn operand(e: &Expr, min: Level) -> String {
    let s = expr_str(e);
    if level_of(e) >= min {
        s
    } else {
        format!("({s})")
    }
}

fn expr_str(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Int {
            value,
            unsigned,
            long,
        } => {
            format!(
                "{value}{}{}",
                if *unsigned { "u" } else { "" },
                if *long { "l" } else { "" }
            )
        }
        ExprKind::Float(f) => {
            let s = format!("{f:?}");
            if s.contains(['.', 'e']) {
                s
            } else {
                format!("{s}.0")
            }
        }
        ExprKind::Char(c) => format!("'{}'", escape(&[*c as u8], b'\'')),
        ExprKind::Str(bytes) => format!("\"{}\"", escape(bytes, b'"')),
        ExprKind::Ident(n) => n.clone(),
        ExprKind::Unary(op, x) => match op {
            UnaryOp::PostInc => format!("{}++", operand(x, Level::Postfix)),
            UnaryOp::PostDec => format!("{}--", operand(x, Level::Postfix)),
            _ => {
                let sym = match op {
                    UnaryOp::Neg => "-",
                    UnaryOp::Plus => "+",
                    UnaryOp::Not => "!",
                    UnaryOp::BitNot => "~",
                    UnaryOp::Deref => "*",
                    UnaryOp::AddrOf => "&",
                    UnaryOp::PreInc => "++",
                    _ => "--",
                };
                // A space keeps `- -x` from lexing as `--x`.
                format!("{sym} {}", operand(x, Level::Unary))
            }
        },
        ExprKind::Binary(op, l, r) => {
            let p = op.precedence();
            format!(
                "{} {} {}",
                operand(l, Level::Binary(p)),
                op.symbol(),
                operand(r, Level::Binary(p + 1))
            )
        }
        ExprKind::Assign(op, l, r) => format!(
            "{} {}= {}",
            operand(l, Level::Unary),
            op.map_or("", BinaryOp::symbol),
            operand(r, Level::Assign)
        ),
        ExprKind::Cond(c, a, b) => format!(
            "{} ? {} : {}",
            operand(c, Level::Binary(1)),
            operand(a, Level::Comma),
            operand(b, Level::Cond)
        ),
        ExprKind::Call(f, args) => {
            let args: Vec<String> = args.iter().map(|a| operand(a, Level::Assign)).collect();
            format!("{}({})", operand(f, Level::Postfix), args.join(", "))
        }
        ExprKind::Index(a, i) => format!("{}[{}]", operand(a, Level::Postfix), expr_str(i)),
        ExprKind::Member(b, name, arrow) => {
            format!(
                "{}{}{name}",
                operand(b, Level::Postfix),
                if *arrow { "->" } else { "." }
            )
        }
        ExprKind::Cast(t, x) => format!("({}) {}", type_name_str(t), operand(x, Level::Unary)),
        ExprKind::SizeofType(t) => format!("sizeof({})", type_name_str(t)),
        ExprKind::SizeofExpr(x) => format!("sizeof {}", operand(x, Level::Unary)),
        ExprKind::Comma(a, b) => format!(
            "{}, {}",
            operand(a, Level::Comma),
            operand(b, Level::Assign)
        ),
        ExprKind::VaArg(l, t) => format!(
            "va_arg({}, {})",
            operand(l, Level::Assign),
            type_name_str(t)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_source;
    use super::*;

    fn round_trip(src: &str) {
        let a = parse_source(src, 0).unwrap();
        let printed = print_unit(&a);
        let b = parse_source(&printed, 0).unwrap_or_else(|e| panic!("{}\n{printed}", e.message));
        assert_eq!(a, b, "\n{printed}");
        assert_eq!(printed, print_unit(&b));
    }

    #[test]
    fn declarators_round_trip() {
        round_trip("int (*p)[4]; int *q[4]; int (*fp)(int, char *); char **argv; void f(void); int g(int n, ...);");
    }

    #[test]
    fn expressions_round_trip() {
        round_trip(
            "int f(int a, int b) { return -(-a) - (b - 1) * 3 + (a, b) + (a ? b : a ? 1 : 2) + sizeof(int *) + sizeof a; }",
        );
        round_trip("void g(char *s) { s[1] = '\\n'; *s++ = 'x'; (*s)++; s = \"a\\\"b\\001\"; }");
        round_trip("double h(void) { return (double) 1 / 2.5e-3 + 1e20; }");
    }

    #[test]
    fn statements_round_trip() {
        round_trip(
            "struct P { int x, y; struct P *next; };\n\
             int main(void) { static int k = 1; struct P p = {1, 2, 0}; \
             for (int i = 0; i < 3; i++) { if (i) continue; else break; } \
             do k--; while (k > 0); while (1) {} for (;;) ; return p.x + (&p)->y; }",
        );
    }
}
