use thiserror::Error;

use super::ast::{Expr, Lit, Module, Param, Pos, Stmt};
use super::lexer::{decode_string, tokenize, LexError};
use super::token::{Token, TokenKind};

/// Parse error at the first offending token; the parser does not recover.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at {line}:{col}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

/// Front-end error covering both phases.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Tokenizes and parses a source string in one step.
pub fn parse_source(source: &str) -> Result<Module, FrontendError> {
    let tokens = tokenize(source)?;
    Ok(parse(&tokens)?)
}

/// Parses a token list (as produced by `tokenize`) into a Module.
///
/// COMMENT tokens are ignored. Docstrings — a bare string literal as the
/// first statement of a function body — are attached to their FunctionDef
/// while remaining in the body.
pub fn parse(tokens: &[Token]) -> Result<Module, ParseError> {
    let significant: Vec<&Token> =
        tokens.iter().filter(|t| t.kind != TokenKind::Comment).collect();
    let mut parser = Parser { tokens: significant, pos: 0 };
    parser.module()
}

struct Parser<'a> {
    tokens: Vec<&'a Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> &'a Token {
        let tok = self.tokens[self.pos.min(self.tokens.len() - 1)];
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        tok
    }

    fn err(&self, expected: impl Into<String>) -> ParseError {
        let tok = self.peek();
        let found = match tok.kind {
            TokenKind::Eof => "EOF".to_string(),
            TokenKind::Newline => "NEWLINE".to_string(),
            TokenKind::Indent => "INDENT".to_string(),
            TokenKind::Dedent => "DEDENT".to_string(),
            _ => format!("{:?}", tok.lexeme),
        };
        ParseError { line: tok.line, col: tok.col, expected: expected.into(), found }
    }

    fn at(&self, kind: TokenKind, lexeme: &str) -> bool {
        let tok = self.peek();
        tok.kind == kind && tok.lexeme == lexeme
    }

    fn at_keyword(&self, word: &str) -> bool {
        self.at(TokenKind::Keyword, word)
    }

    fn eat(&mut self, kind: TokenKind, lexeme: &str) -> bool {
        if self.at(kind, lexeme) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, lexeme: &str) -> Result<&'a Token, ParseError> {
        if self.at(kind, lexeme) {
            Ok(self.bump())
        } else {
            Err(self.err(format!("{lexeme:?}")))
        }
    }

    fn expect_kind(&mut self, kind: TokenKind, what: &str) -> Result<&'a Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.err(what))
        }
    }

    fn module(&mut self) -> Result<Module, ParseError> {
        let mut body = Vec::new();
        while self.peek().kind != TokenKind::Eof {
            body.push(self.stmt()?);
        }
        Ok(Module { body })
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let tok = self.peek();
        let pos = Pos::new(tok.line, tok.col);
        if tok.kind == TokenKind::Keyword {
            match tok.lexeme.as_str() {
                "def" => return self.funcdef(pos),
                "class" => return self.classdef(pos),
                "return" => return self.return_stmt(pos),
                "if" => return self.if_stmt(pos),
                "while" => return self.while_stmt(pos),
                "for" => return self.for_stmt(pos),
                "pass" => {
                    self.bump();
                    self.expect_kind(TokenKind::Newline, "NEWLINE")?;
                    return Ok(Stmt::Pass { pos });
                }
                _ => {}
            }
        }
        // assign | exprstmt
        let expr = self.expr()?;
        if self.at(TokenKind::Op, "=") {
            match expr {
                Expr::Name { .. } | Expr::Attribute { .. } | Expr::Subscript { .. } => {}
                _ => return Err(self.err("assignment target (name, attribute, or subscript)")),
            }
            self.bump();
            let value = self.expr()?;
            self.expect_kind(TokenKind::Newline, "NEWLINE")?;
            Ok(Stmt::Assign { target: expr, value, pos })
        } else {
            self.expect_kind(TokenKind::Newline, "NEWLINE")?;
            Ok(Stmt::ExprStmt { expr, pos })
        }
    }

    fn funcdef(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        self.bump(); // def
        let name = self.expect_kind(TokenKind::Ident, "function name")?.lexeme.clone();
        self.expect(TokenKind::Punct, "(")?;
        let mut params = Vec::new();
        if !self.at(TokenKind::Punct, ")") {
            loop {
                let p = self.expect_kind(TokenKind::Ident, "parameter name")?;
                let ppos = Pos::new(p.line, p.col);
                let pname = p.lexeme.clone();
                let annotation = if self.eat(TokenKind::Punct, ":") {
                    Some(self.expect_kind(TokenKind::Ident, "type name")?.lexeme.clone())
                } else {
                    None
                };
                params.push(Param { name: pname, annotation, pos: ppos });
                if !self.eat(TokenKind::Punct, ",") {
                    break;
                }
            }
        }
        self.expect(TokenKind::Punct, ")")?;
        let return_annotation = if self.eat(TokenKind::Op, "->") {
            Some(self.expect_kind(TokenKind::Ident, "type name")?.lexeme.clone())
        } else {
            None
        };
        self.expect(TokenKind::Punct, ":")?;
        let body = self.block()?;
        let docstring = match body.first() {
            Some(Stmt::ExprStmt { expr: Expr::Literal { value: Lit::Str(s), .. }, .. }) => {
                Some(s.clone())
            }
            _ => None,
        };
        Ok(Stmt::FunctionDef { name, params, return_annotation, docstring, body, pos })
    }

    fn classdef(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        self.bump(); // class
        let name = self.expect_kind(TokenKind::Ident, "class name")?.lexeme.clone();
        self.expect(TokenKind::Punct, ":")?;
        let body = self.block()?;
        Ok(Stmt::ClassDef { name, body, pos })
    }

    fn return_stmt(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        self.bump(); // return
        if self.peek().kind == TokenKind::Newline {
            self.bump();
            return Ok(Stmt::Return { value: None, pos });
        }
        let value = self.expr()?;
        self.expect_kind(TokenKind::Newline, "NEWLINE")?;
        Ok(Stmt::Return { value: Some(value), pos })
    }

    fn if_stmt(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        self.bump(); // if
        let cond = self.expr()?;
        self.expect(TokenKind::Punct, ":")?;
        let then_body = self.block()?;
        let mut elifs = Vec::new();
        while self.at_keyword("elif") {
            self.bump();
            let c = self.expr()?;
            self.expect(TokenKind::Punct, ":")?;
            elifs.push((c, self.block()?));
        }
        let else_body = if self.at_keyword("else") {
            self.bump();
            self.expect(TokenKind::Punct, ":")?;
            Some(self.block()?)
        } else {
            None
        };
        Ok(Stmt::If { cond, then_body, elifs, else_body, pos })
    }

    fn while_stmt(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        self.bump(); // while
        let cond = self.expr()?;
        self.expect(TokenKind::Punct, ":")?;
        let body = self.block()?;
        Ok(Stmt::While { cond, body, pos })
    }

    fn for_stmt(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        self.bump(); // for
        let var = self.expect_kind(TokenKind::Ident, "loop variable")?.lexeme.clone();
        self.expect(TokenKind::Keyword, "in")?;
        let iterable = self.expr()?;
        self.expect(TokenKind::Punct, ":")?;
        let body = self.block()?;
        Ok(Stmt::For { var, iterable, body, pos })
    }

    fn block(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.expect_kind(TokenKind::Newline, "NEWLINE")?;
        self.expect_kind(TokenKind::Indent, "INDENT")?;
        let mut body = Vec::new();
        while self.peek().kind != TokenKind::Dedent {
            if self.peek().kind == TokenKind::Eof {
                return Err(self.err("DEDENT"));
            }
            body.push(self.stmt()?);
        }
        self.bump(); // dedent
        Ok(body)
    }

    // Expression parsing, loosest binding first:
    //   or < and < not < comparison < additive < multiplicative < unary- < postfix
    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.or_expr()
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.and_expr()?;
        while self.at_keyword("or") {
            let pos = left.pos();
            self.bump();
            let right = self.and_expr()?;
            left = Expr::BinOp { op: "or".into(), left: Box::new(left), right: Box::new(right), pos };
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.not_expr()?;
        while self.at_keyword("and") {
            let pos = left.pos();
            self.bump();
            let right = self.not_expr()?;
            left =
                Expr::BinOp { op: "and".into(), left: Box::new(left), right: Box::new(right), pos };
        }
        Ok(left)
    }

    fn not_expr(&mut self) -> Result<Expr, ParseError> {
        if self.at_keyword("not") {
            let tok = self.bump();
            let pos = Pos::new(tok.line, tok.col);
            let operand = self.not_expr()?;
            return Ok(Expr::UnaryOp { op: "not".into(), operand: Box::new(operand), pos });
        }
        self.comparison()
    }

    fn comparison(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.additive()?;
        loop {
            let op = match self.peek() {
                t if t.kind == TokenKind::Op => match t.lexeme.as_str() {
                    "==" | "!=" | "<" | "<=" | ">" | ">=" => t.lexeme.clone(),
                    _ => break,
                },
                _ => break,
            };
            let pos = left.pos();
            self.bump();
            let right = self.additive()?;
            left = Expr::BinOp { op, left: Box::new(left), right: Box::new(right), pos };
        }
        Ok(left)
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                t if t.kind == TokenKind::Op && (t.lexeme == "+" || t.lexeme == "-") => {
                    t.lexeme.clone()
                }
                _ => break,
            };
            let pos = left.pos();
            self.bump();
            let right = self.multiplicative()?;
            left = Expr::BinOp { op, left: Box::new(left), right: Box::new(right), pos };
        }
        Ok(left)
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.unary()?;
        loop {
            let op = match self.peek() {
                t if t.kind == TokenKind::Op
                    && (t.lexeme == "*" || t.lexeme == "/" || t.lexeme == "%") =>
                {
                    t.lexeme.clone()
                }
                _ => break,
            };
            let pos = left.pos();
            self.bump();
            let right = self.unary()?;
            left = Expr::BinOp { op, left: Box::new(left), right: Box::new(right), pos };
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.at(TokenKind::Op, "-") {
            let tok = self.bump();
            let pos = Pos::new(tok.line, tok.col);
            let operand = self.unary()?;
            return Ok(Expr::UnaryOp { op: "-".into(), operand: Box::new(operand), pos });
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut expr = self.atom()?;
        loop {
            if self.at(TokenKind::Punct, "(") {
                let pos = expr.pos();
                self.bump();
                let mut args = Vec::new();
                if !self.at(TokenKind::Punct, ")") {
                    loop {
                        args.push(self.expr()?);
                        if !self.eat(TokenKind::Punct, ",") {
                            break;
                        }
                    }
                }
                let close = self.expect(TokenKind::Punct, ")")?;
                let close_pos = Pos::new(close.line, close.col);
                expr = Expr::Call { callee: Box::new(expr), args, pos, close_pos };
            } else if self.at(TokenKind::Punct, ".") {
                let pos = expr.pos();
                self.bump();
                let attr = self.expect_kind(TokenKind::Ident, "attribute name")?.lexeme.clone();
                expr = Expr::Attribute { base: Box::new(expr), attr, pos };
            } else if self.at(TokenKind::Punct, "[") {
                let pos = expr.pos();
                self.bump();
                let index = self.expr()?;
                self.expect(TokenKind::Punct, "]")?;
                expr = Expr::Subscript { base: Box::new(expr), index: Box::new(index), pos };
            } else {
                break;
            }
        }
        Ok(expr)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek().clone();
        let pos = Pos::new(tok.line, tok.col);
        match tok.kind {
            TokenKind::Ident => {
                self.bump();
                Ok(Expr::Name { id: tok.lexeme, pos })
            }
            TokenKind::IntLit => {
                self.bump();
                let value: i64 = tok.lexeme.parse().map_err(|_| ParseError {
                    line: pos.line,
                    col: pos.col,
                    expected: "integer literal in range".into(),
                    found: tok.lexeme.clone(),
                })?;
                Ok(Expr::Literal { value: Lit::Int(value), pos })
            }
            TokenKind::FloatLit => {
                self.bump();
                let value: f64 = tok.lexeme.parse().expect("float lexeme always parses");
                Ok(Expr::Literal { value: Lit::Float(value), pos })
            }
            TokenKind::StrLit => {
                self.bump();
                Ok(Expr::Literal { value: Lit::Str(decode_string(&tok.lexeme)), pos })
            }
            TokenKind::Keyword => match tok.lexeme.as_str() {
                "True" => {
                    self.bump();
                    Ok(Expr::Literal { value: Lit::Bool(true), pos })
                }
                "False" => {
                    self.bump();
                    Ok(Expr::Literal { value: Lit::Bool(false), pos })
                }
                "None" => {
                    self.bump();
                    Ok(Expr::Literal { value: Lit::None, pos })
                }
                _ => Err(self.err("expression")),
            },
            TokenKind::Punct => match tok.lexeme.as_str() {
                "(" => {
                    self.bump();
                    let inner = self.expr()?;
                    self.expect(TokenKind::Punct, ")")?;
                    Ok(inner)
                }
                "[" => {
                    self.bump();
                    let mut items = Vec::new();
                    if !self.at(TokenKind::Punct, "]") {
                        loop {
                            items.push(self.expr()?);
                            if !self.eat(TokenKind::Punct, ",") {
                                break;
                            }
                        }
                    }
                    self.expect(TokenKind::Punct, "]")?;
                    Ok(Expr::ListExpr { items, pos })
                }
                "..." => {
                    self.bump();
                    Ok(Expr::Literal { value: Lit::Ellipsis, pos })
                }
                _ => Err(self.err("expression")),
            },
            _ => Err(self.err("expression")),
        }
    }
}
