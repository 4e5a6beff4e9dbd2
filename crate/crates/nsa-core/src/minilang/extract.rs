use super::ast::{Expr, LitKind, Module, Stmt};

/// One function call with at least two arguments, as seen by the analyses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CallSite {
    pub callee_name: String,
    /// Receiver name for attribute callees (`board` in `board.mark_point(..)`).
    pub base_name: Option<String>,
    /// One heuristic name per argument, in source order.
    pub arg_names: Vec<String>,
    /// Callee parameter names when the callee resolves to exactly one
    /// same-module definition; `self` is dropped for methods.
    pub resolved_param_names: Option<Vec<String>>,
    pub file: String,
    pub line: usize,
    pub col: usize,
}

/// Heuristic name of an arbitrary expression.
///
/// Identifiers name themselves, attribute/subscript/call chains defer to the
/// named part, literals carry their kind, and anything else is "EXPR". Total
/// over every expression variant.
pub fn name_of(expr: &Expr) -> String {
    match expr {
        Expr::Name { id, .. } => id.clone(),
        Expr::Attribute { attr, .. } => attr.clone(),
        Expr::Call { callee, .. } => name_of(callee),
        Expr::Subscript { base, .. } => name_of(base),
        Expr::Literal { value, .. } => match value.kind() {
            LitKind::Int => "LIT:INT".to_string(),
            LitKind::Float => "LIT:FLOAT".to_string(),
            LitKind::Str => "LIT:STR".to_string(),
            LitKind::Bool => "LIT:BOOL".to_string(),
            LitKind::None => "LIT:NONE".to_string(),
        },
        Expr::BinOp { .. } | Expr::UnaryOp { .. } | Expr::ListExpr { .. } => "EXPR".to_string(),
    }
}

/// Extracts every call with at least two arguments, in source order.
///
/// A call's recorded position is where its argument list closes, so nested
/// calls (which complete before their enclosing call) come first and the
/// output is sorted by (line, col).
pub fn extract_calls(module: &Module, file: &str) -> Vec<CallSite> {
    let resolver = Resolver::new(module);
    let mut out = Vec::new();
    for stmt in &module.body {
        walk_stmt(stmt, &mut |expr| visit_call(expr, file, &resolver, &mut out));
    }
    out
}

struct Resolver<'a> {
    functions: Vec<(&'a str, &'a [super::ast::Param])>,
    methods: Vec<(&'a str, &'a [super::ast::Param])>,
}

impl<'a> Resolver<'a> {
    fn new(module: &'a Module) -> Self {
        let mut functions = Vec::new();
        let mut methods = Vec::new();
        for stmt in &module.body {
            match stmt {
                Stmt::FunctionDef { name, params, .. } => {
                    functions.push((name.as_str(), params.as_slice()));
                }
                Stmt::ClassDef { body, .. } => {
                    for inner in body {
                        if let Stmt::FunctionDef { name, params, .. } = inner {
                            methods.push((name.as_str(), params.as_slice()));
                        }
                    }
                }
                _ => {}
            }
        }
        Resolver { functions, methods }
    }

    /// Parameter names of the unique definition matching the call shape, if
    /// any. Method resolution drops the leading `self`.
    fn resolve(&self, callee_name: &str, is_method: bool) -> Option<Vec<String>> {
        let pool = if is_method { &self.methods } else { &self.functions };
        let mut matches = pool.iter().filter(|(name, _)| *name == callee_name);
        let (_, params) = matches.next()?;
        if matches.next().is_some() {
            return None;
        }
        let names: Vec<String> = params
            .iter()
            .enumerate()
            .filter(|(i, p)| !(is_method && *i == 0 && p.name == "self"))
            .map(|(_, p)| p.name.clone())
            .collect();
        Some(names)
    }
}

fn visit_call(expr: &Expr, file: &str, resolver: &Resolver, out: &mut Vec<CallSite>) {
    if let Expr::Call { callee, args, close_pos, .. } = expr {
        if args.len() >= 2 {
            let (base_name, is_method) = match callee.as_ref() {
                Expr::Attribute { base, .. } => (Some(name_of(base)), true),
                _ => (None, false),
            };
            let callee_name = name_of(callee);
            let resolved_param_names = resolver.resolve(&callee_name, is_method);
            out.push(CallSite {
                callee_name,
                base_name,
                arg_names: args.iter().map(name_of).collect(),
                resolved_param_names,
                file: file.to_string(),
                line: close_pos.line,
                col: close_pos.col,
            });
        }
    }
}

/// Post-order walk: children before the node itself, so inner calls are
/// emitted before the calls that enclose them.
fn walk_expr(expr: &Expr, f: &mut impl FnMut(&Expr)) {
    match expr {
        Expr::Name { .. } | Expr::Literal { .. } => {}
        Expr::Attribute { base, .. } => walk_expr(base, f),
        Expr::Call { callee, args, .. } => {
            walk_expr(callee, f);
            for arg in args {
                walk_expr(arg, f);
            }
        }
        Expr::Subscript { base, index, .. } => {
            walk_expr(base, f);
            walk_expr(index, f);
        }
        Expr::BinOp { left, right, .. } => {
            walk_expr(left, f);
            walk_expr(right, f);
        }
        Expr::UnaryOp { operand, .. } => walk_expr(operand, f),
        Expr::ListExpr { items, .. } => {
            for item in items {
                walk_expr(item, f);
            }
        }
    }
    f(expr);
}

fn walk_stmt(stmt: &Stmt, f: &mut impl FnMut(&Expr)) {
    match stmt {
        Stmt::FunctionDef { body, .. } | Stmt::ClassDef { body, .. } => {
            for s in body {
                walk_stmt(s, f);
            }
        }
        Stmt::Assign { target, value, .. } => {
            walk_expr(target, f);
            walk_expr(value, f);
        }
        Stmt::Return { value, .. } => {
            if let Some(v) = value {
                walk_expr(v, f);
            }
        }
        Stmt::If { cond, then_body, elifs, else_body, .. } => {
            walk_expr(cond, f);
            for s in then_body {
                walk_stmt(s, f);
            }
            for (c, body) in elifs {
                walk_expr(c, f);
                for s in body {
                    walk_stmt(s, f);
                }
            }
            if let Some(body) = else_body {
                for s in body {
                    walk_stmt(s, f);
                }
            }
        }
        Stmt::While { cond, body, .. } => {
            walk_expr(cond, f);
            for s in body {
                walk_stmt(s, f);
            }
        }
        Stmt::For { iterable, body, .. } => {
            walk_expr(iterable, f);
            for s in body {
                walk_stmt(s, f);
            }
        }
        Stmt::ExprStmt { expr, .. } => walk_expr(expr, f),
        Stmt::Pass { .. } => {}
    }
}
