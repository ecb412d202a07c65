"""The little term language behind `ngd eval`.

Terms name the approximate operations directly; `lim(eps -> 0, ...)`
wraps any of them in a numerical limit along a dyadic grid.  Errors
carry 1-based line:column positions, which the CLI turns into exit
code 2.
"""

from ngd import (
    EvalContext,
    TermError,
    euclidean_model,
    heisenberg_model,
    parse,
    run,
    to_text,
)


def main():
    for src in (
        "d((3, 1))",
        "Delta(1/10, (3, 0), (1, 0))",
        "lim(eps -> 0, Sigma(eps, (3, 0), (1, 0)))",
        "let(x, (2, 0), Sigma(1/4, x, inv(1/4, x)))",
    ):
        value, rendered, estimates = run(src, EvalContext(euclidean_model(1)))
        print(to_text(parse(src)))
        print(f"  = {rendered}")
        for est in estimates:
            print(f"  (limit fitted at order {est.order:.2f}, "
                  f"last residual {est.residuals[-1]:.2e})")

    print("\nheisenberg, based difference of two horizontal points:")
    src = "lim(eps -> 0, Delta(eps, (1, 0, 0), (0, 1, 0)))"
    _, rendered, _ = run(src, EvalContext(heisenberg_model()))
    print(f"  {src} = {rendered}")

    print("\na parse error, with its position:")
    try:
        parse("Sigma(1/2, (1,0)")
    except TermError as err:
        print(f"  {err}")


if __name__ == "__main__":
    main()
