//! Lightweight static analysis front end for MiniLang.
//!
//! MiniLang is a small dynamically-typed, indentation-sensitive language
//! (a Python subset, roughly). This module provides the tokenizer, the
//! recursive-descent parser, the AST with a round-trippable pretty-printer,
//! and the call-site extraction helpers the analyses build on.

mod ast;
mod extract;
mod lexer;
mod parser;
mod pretty;
mod token;

pub use ast::{strip_positions, structurally_equal, Expr, Lit, LitKind, Module, Param, Pos, Stmt};
pub use extract::{extract_calls, name_of, CallSite};
pub use lexer::{tokenize, LexError};
pub use parser::{parse, parse_source, FrontendError, ParseError};
pub use pretty::{pretty_expr, pretty_print, pretty_stmt};
pub use token::{Token, TokenKind, KEYWORDS};
