"""Deterministic automata: the base interface, builtin languages and DFA files."""
