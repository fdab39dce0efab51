"""Random generators shared by the verification suites and the test suite."""

from __future__ import annotations

from fractions import Fraction

from .expr_io import Add, Ber, Bracket, DApp, Lit, Mul, Neg, Pow, Sym


def rand_ast(rng, depth=0):
    """Random canonical AST: nested sums/products are parenthesized by the
    printer, so any shape round-trips."""
    choices = ["lit", "sym", "add", "mul", "pow", "neg"]
    if depth < 1:
        choices += ["dapp", "bracket", "ber"]
    kind = rng.choice(choices if depth < 3 else ["lit", "sym"])
    if kind == "lit":
        return Lit(Fraction(rng.randint(0, 9), rng.randint(1, 9)))
    if kind == "sym":
        return Sym(rng.choice(["x", "th1", "et2", "eps", "u3", "phi_t"]))
    if kind == "add":
        return Add(tuple(rand_ast(rng, depth + 1) for _ in range(rng.randint(2, 3))))
    if kind == "mul":
        return Mul(tuple(rand_ast(rng, depth + 1) for _ in range(rng.randint(2, 3))))
    if kind == "pow":
        return Pow(rand_ast(rng, depth + 1), rng.randint(0, 4))
    if kind == "neg":
        return Neg(rand_ast(rng, depth + 1))
    if kind == "dapp":
        return DApp("dt", rand_ast(rng, depth + 1))
    if kind == "bracket":
        return Bracket(rand_ast(rng, depth + 1), rand_ast(rng, depth + 1))
    return Ber(rand_ast(rng, depth + 1))
