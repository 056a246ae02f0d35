"""A refinement-typed core calculus: interpreter, checker, solver and oracle."""

__version__ = "0.1.0"
