/// 1-based source position of a node's first token.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn new(line: usize, col: usize) -> Self {
        Pos { line, col }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Module {
    pub body: Vec<Stmt>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Param {
    pub name: String,
    pub annotation: Option<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    FunctionDef {
        name: String,
        params: Vec<Param>,
        return_annotation: Option<String>,
        /// Set when the first body statement is a bare string literal. The
        /// statement itself stays in `body`.
        docstring: Option<String>,
        body: Vec<Stmt>,
        pos: Pos,
    },
    ClassDef {
        name: String,
        body: Vec<Stmt>,
        pos: Pos,
    },
    Assign {
        target: Expr,
        value: Expr,
        pos: Pos,
    },
    Return {
        value: Option<Expr>,
        pos: Pos,
    },
    If {
        cond: Expr,
        then_body: Vec<Stmt>,
        elifs: Vec<(Expr, Vec<Stmt>)>,
        else_body: Option<Vec<Stmt>>,
        pos: Pos,
    },
    While {
        cond: Expr,
        body: Vec<Stmt>,
        pos: Pos,
    },
    For {
        var: String,
        iterable: Expr,
        body: Vec<Stmt>,
        pos: Pos,
    },
    ExprStmt {
        expr: Expr,
        pos: Pos,
    },
    Pass {
        pos: Pos,
    },
}

/// Literal kinds as seen by downstream analyses; `...` counts as NONE.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LitKind {
    Int,
    Float,
    Str,
    Bool,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lit {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
    None,
    /// The `...` placeholder; a NONE-kind literal that prints back as `...`.
    Ellipsis,
}

impl Lit {
    pub fn kind(&self) -> LitKind {
        match self {
            Lit::Int(_) => LitKind::Int,
            Lit::Float(_) => LitKind::Float,
            Lit::Str(_) => LitKind::Str,
            Lit::Bool(_) => LitKind::Bool,
            Lit::None | Lit::Ellipsis => LitKind::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name { id: String, pos: Pos },
    Attribute { base: Box<Expr>, attr: String, pos: Pos },
    Call { callee: Box<Expr>, args: Vec<Expr>, pos: Pos, close_pos: Pos },
    Subscript { base: Box<Expr>, index: Box<Expr>, pos: Pos },
    Literal { value: Lit, pos: Pos },
    BinOp { op: String, left: Box<Expr>, right: Box<Expr>, pos: Pos },
    UnaryOp { op: String, operand: Box<Expr>, pos: Pos },
    ListExpr { items: Vec<Expr>, pos: Pos },
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Name { pos, .. }
            | Expr::Attribute { pos, .. }
            | Expr::Call { pos, .. }
            | Expr::Subscript { pos, .. }
            | Expr::Literal { pos, .. }
            | Expr::BinOp { pos, .. }
            | Expr::UnaryOp { pos, .. }
            | Expr::ListExpr { pos, .. } => *pos,
        }
    }
}

impl Stmt {
    pub fn pos(&self) -> Pos {
        match self {
            Stmt::FunctionDef { pos, .. }
            | Stmt::ClassDef { pos, .. }
            | Stmt::Assign { pos, .. }
            | Stmt::Return { pos, .. }
            | Stmt::If { pos, .. }
            | Stmt::While { pos, .. }
            | Stmt::For { pos, .. }
            | Stmt::ExprStmt { pos, .. }
            | Stmt::Pass { pos } => *pos,
        }
    }
}

/// Zeroes every position in the module so structural comparison ignores
/// layout.
pub fn strip_positions(module: &mut Module) {
    for stmt in &mut module.body {
        strip_stmt(stmt);
    }
}

/// Structural equality: node-for-node identity ignoring source positions.
pub fn structurally_equal(a: &Module, b: &Module) -> bool {
    let mut a = a.clone();
    let mut b = b.clone();
    strip_positions(&mut a);
    strip_positions(&mut b);
    a == b
}

fn strip_stmt(stmt: &mut Stmt) {
    match stmt {
        Stmt::FunctionDef { params, body, pos, .. } => {
            *pos = Pos::default();
            for p in params {
                p.pos = Pos::default();
            }
            body.iter_mut().for_each(strip_stmt);
        }
        Stmt::ClassDef { body, pos, .. } => {
            *pos = Pos::default();
            body.iter_mut().for_each(strip_stmt);
        }
        Stmt::Assign { target, value, pos } => {
            *pos = Pos::default();
            strip_expr(target);
            strip_expr(value);
        }
        Stmt::Return { value, pos } => {
            *pos = Pos::default();
            if let Some(v) = value {
                strip_expr(v);
            }
        }
        Stmt::If { cond, then_body, elifs, else_body, pos } => {
            *pos = Pos::default();
            strip_expr(cond);
            then_body.iter_mut().for_each(strip_stmt);
            for (c, body) in elifs {
                strip_expr(c);
                body.iter_mut().for_each(strip_stmt);
            }
            if let Some(body) = else_body {
                body.iter_mut().for_each(strip_stmt);
            }
        }
        Stmt::While { cond, body, pos } => {
            *pos = Pos::default();
            strip_expr(cond);
            body.iter_mut().for_each(strip_stmt);
        }
        Stmt::For { iterable, body, pos, .. } => {
            *pos = Pos::default();
            strip_expr(iterable);
            body.iter_mut().for_each(strip_stmt);
        }
        Stmt::ExprStmt { expr, pos } => {
            *pos = Pos::default();
            strip_expr(expr);
        }
        Stmt::Pass { pos } => *pos = Pos::default(),
    }
}

fn strip_expr(expr: &mut Expr) {
    match expr {
        Expr::Name { pos, .. } => *pos = Pos::default(),
        Expr::Attribute { base, pos, .. } => {
            *pos = Pos::default();
            strip_expr(base);
        }
        Expr::Call { callee, args, pos, close_pos } => {
            *pos = Pos::default();
            *close_pos = Pos::default();
            strip_expr(callee);
            args.iter_mut().for_each(strip_expr);
        }
        Expr::Subscript { base, index, pos } => {
            *pos = Pos::default();
            strip_expr(base);
            strip_expr(index);
        }
        Expr::Literal { pos, .. } => *pos = Pos::default(),
        Expr::BinOp { left, right, pos, .. } => {
            *pos = Pos::default();
            strip_expr(left);
            strip_expr(right);
        }
        Expr::UnaryOp { operand, pos, .. } => {
            *pos = Pos::default();
            strip_expr(operand);
        }
        Expr::ListExpr { items, pos } => {
            *pos = Pos::default();
            items.iter_mut().for_each(strip_expr);
        }
    }
}
