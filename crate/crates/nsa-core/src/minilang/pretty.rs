use super::ast::{Expr, Lit, Module, Stmt};

/// Renders a module back to MiniLang source.
///
/// The output is canonical (4-space indents, single spaces around binary
/// operators) rather than layout-preserving; re-parsing it yields a module
/// structurally identical to the input.
pub fn pretty_print(module: &Module) -> String {
    let mut out = String::new();
    for stmt in &module.body {
        write_stmt(&mut out, stmt, 0);
    }
    out
}

/// Renders a single statement (with its nested blocks) at the given indent.
pub fn pretty_stmt(stmt: &Stmt, indent: usize) -> String {
    let mut out = String::new();
    write_stmt(&mut out, stmt, indent);
    out
}

/// Renders an expression with minimal parenthesization.
pub fn pretty_expr(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr, 0);
    out
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("    ");
    }
}

fn write_block(out: &mut String, body: &[Stmt], indent: usize) {
    for stmt in body {
        write_stmt(out, stmt, indent);
    }
}

fn write_stmt(out: &mut String, stmt: &Stmt, indent: usize) {
    match stmt {
        Stmt::FunctionDef { name, params, return_annotation, body, .. } => {
            pad(out, indent);
            out.push_str("def ");
            out.push_str(name);
            out.push('(');
            for (i, p) in params.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&p.name);
                if let Some(ann) = &p.annotation {
                    out.push_str(": ");
                    out.push_str(ann);
                }
            }
            out.push(')');
            if let Some(ret) = return_annotation {
                out.push_str(" -> ");
                out.push_str(ret);
            }
            out.push_str(":\n");
            write_block(out, body, indent + 1);
        }
        Stmt::ClassDef { name, body, .. } => {
            pad(out, indent);
            out.push_str("class ");
            out.push_str(name);
            out.push_str(":\n");
            write_block(out, body, indent + 1);
        }
        Stmt::Assign { target, value, .. } => {
            pad(out, indent);
            write_expr(out, target, 0);
            out.push_str(" = ");
            write_expr(out, value, 0);
            out.push('\n');
        }
        Stmt::Return { value, .. } => {
            pad(out, indent);
            out.push_str("return");
            if let Some(v) = value {
                out.push(' ');
                write_expr(out, v, 0);
            }
            out.push('\n');
        }
        Stmt::If { cond, then_body, elifs, else_body, .. } => {
            pad(out, indent);
            out.push_str("if ");
            write_expr(out, cond, 0);
            out.push_str(":\n");
            write_block(out, then_body, indent + 1);
            for (c, body) in elifs {
                pad(out, indent);
                out.push_str("elif ");
                write_expr(out, c, 0);
                out.push_str(":\n");
                write_block(out, body, indent + 1);
            }
            if let Some(body) = else_body {
                pad(out, indent);
                out.push_str("else:\n");
                write_block(out, body, indent + 1);
            }
        }
        Stmt::While { cond, body, .. } => {
            pad(out, indent);
            out.push_str("while ");
            write_expr(out, cond, 0);
            out.push_str(":\n");
            write_block(out, body, indent + 1);
        }
        Stmt::For { var, iterable, body, .. } => {
            pad(out, indent);
            out.push_str("for ");
            out.push_str(var);
            out.push_str(" in ");
            write_expr(out, iterable, 0);
            out.push_str(":\n");
            write_block(out, body, indent + 1);
        }
        Stmt::ExprStmt { expr, .. } => {
            pad(out, indent);
            write_expr(out, expr, 0);
            out.push('\n');
        }
        Stmt::Pass { .. } => {
            pad(out, indent);
            out.push_str("pass\n");
        }
    }
}

// Binding strengths; parenthesize a child whenever it binds looser than its
// context requires.
const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_NOT: u8 = 3;
const PREC_CMP: u8 = 4;
const PREC_ADD: u8 = 5;
const PREC_MUL: u8 = 6;
const PREC_NEG: u8 = 7;
const PREC_POSTFIX: u8 = 8;
const PREC_ATOM: u8 = 9;

fn binop_prec(op: &str) -> u8 {
    match op {
        "or" => PREC_OR,
        "and" => PREC_AND,
        "==" | "!=" | "<" | "<=" | ">" | ">=" => PREC_CMP,
        "+" | "-" => PREC_ADD,
        "*" | "/" | "%" => PREC_MUL,
        other => unreachable!("unknown binary operator {other}"),
    }
}

fn expr_prec(expr: &Expr) -> u8 {
    match expr {
        Expr::BinOp { op, .. } => binop_prec(op),
        Expr::UnaryOp { op, .. } => {
            if op == "not" {
                PREC_NOT
            } else {
                PREC_NEG
            }
        }
        Expr::Call { .. } | Expr::Attribute { .. } | Expr::Subscript { .. } => PREC_POSTFIX,
        Expr::Name { .. } | Expr::Literal { .. } | Expr::ListExpr { .. } => PREC_ATOM,
    }
}

fn write_expr(out: &mut String, expr: &Expr, min_prec: u8) {
    let prec = expr_prec(expr);
    let parens = prec < min_prec;
    if parens {
        out.push('(');
    }
    match expr {
        Expr::Name { id, .. } => out.push_str(id),
        Expr::Attribute { base, attr, .. } => {
            write_expr(out, base, PREC_POSTFIX);
            out.push('.');
            out.push_str(attr);
        }
        Expr::Call { callee, args, .. } => {
            write_expr(out, callee, PREC_POSTFIX);
            out.push('(');
            for (i, arg) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, arg, 0);
            }
            out.push(')');
        }
        Expr::Subscript { base, index, .. } => {
            write_expr(out, base, PREC_POSTFIX);
            out.push('[');
            write_expr(out, index, 0);
            out.push(']');
        }
        Expr::Literal { value, .. } => write_literal(out, value),
        Expr::BinOp { op, left, right, .. } => {
            // Left-associative: an equal-precedence right child needs parens.
            write_expr(out, left, prec);
            out.push(' ');
            out.push_str(op);
            out.push(' ');
            write_expr(out, right, prec + 1);
        }
        Expr::UnaryOp { op, operand, .. } => {
            if op == "not" {
                out.push_str("not ");
                write_expr(out, operand, PREC_NOT);
            } else {
                out.push('-');
                write_expr(out, operand, PREC_NEG);
            }
        }
        Expr::ListExpr { items, .. } => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, item, 0);
            }
            out.push(']');
        }
    }
    if parens {
        out.push(')');
    }
}

fn write_literal(out: &mut String, lit: &Lit) {
    match lit {
        Lit::Int(v) => out.push_str(&v.to_string()),
        Lit::Float(v) => out.push_str(&format_float(*v)),
        Lit::Str(s) => write_string(out, s),
        Lit::Bool(true) => out.push_str("True"),
        Lit::Bool(false) => out.push_str("False"),
        Lit::None => out.push_str("None"),
        Lit::Ellipsis => out.push_str("..."),
    }
}

fn format_float(v: f64) -> String {
    let s = format!("{v:?}");
    // The lexer only accepts `digits.digits`; fall back to fixed notation
    // for values Debug would render with an exponent.
    if s.contains('e') || s.contains('E') {
        format!("{v:.17}")
    } else {
        s
    }
}

fn write_string(out: &mut String, value: &str) {
    if value.contains('\n') {
        out.push_str("\"\"\"");
        for c in value.chars() {
            match c {
                '\\' => out.push_str("\\\\"),
                '"' => out.push_str("\\\""),
                '\t' => out.push_str("\\t"),
                '\r' => out.push_str("\\r"),
                other => out.push(other),
            }
        }
        out.push_str("\"\"\"");
    } else {
        out.push('"');
        for c in value.chars() {
            match c {
                '\\' => out.push_str("\\\\"),
                '"' => out.push_str("\\\""),
                '\t' => out.push_str("\\t"),
                '\r' => out.push_str("\\r"),
                other => out.push(other),
            }
        }
        out.push('"');
    }
}
