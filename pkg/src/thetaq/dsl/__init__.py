"""Identity DSL: lexer, parser, pretty-printer, evaluator and the built-in corpus."""

from .ast import Call, Expr, IdentityDecl
from .corpus import builtin_corpus, corpus_by_name, load_qid, render_qid, shipped_qid_text
from .evaluator import EvalOptions, Evaluator, eval_expr
from .lexer import SourceSpan, Tok, Token, tokenize
from .parser import parse, parse_expr
from .printer import pretty, pretty_decl, pretty_file
