//! The textual model language: lexer, parser, lowering to a [`ModelGraph`]
//! and a canonical pretty-printer.

pub mod ast;
mod lexer;
mod lower;
mod parser;
mod pretty;

pub use lexer::{tokenize, Keyword, Token, TokenKind};
pub use lower::lower;
pub use parser::parse;
pub use pretty::pretty;

use crate::diagnostic::{normalize, Diagnostic};
use crate::model::ModelGraph;

/// Tokenizes and parses, returning the recovered tree only when the text
/// is syntactically clean.
pub fn parse_ast(text: &str, file: &str) -> Result<ast::Ast, Vec<Diagnostic>> {
    let tokens = tokenize(text, file)?;
    let (ast, mut diags) = parse(&tokens);
    if diags.is_empty() {
        Ok(ast)
    } else {
        normalize(&mut diags);
        Err(diags)
    }
}

/// Text to finalized graph. Syntax errors stop before lowering, so
/// references to a statement that failed to parse are not reported twice.
pub fn parse_model(text: &str, file: &str) -> Result<ModelGraph, Vec<Diagnostic>> {
    let ast = parse_ast(text, file)?;
    lower(&ast).map_err(|mut diags| {
        normalize(&mut diags);
        diags
    })
}
