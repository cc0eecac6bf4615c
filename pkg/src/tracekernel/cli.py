"""``tracekernel <subcommand> [flags] [input file] [key=value ...]``.

``run`` executes every task of the input document.  Any other subcommand runs
the document's tasks of that name, or a single task built from the key=value
arguments.  ``suite`` and the ``sgp.*`` family need no input file.
"""

from __future__ import annotations

import argparse
import os
import sys

from .document import Document, DocumentError, Task, parse
from .runner import OPS, Options, Report, emit, run_document

__all__ = ["main", "build_parser"]

SEED_ENV = "TRACEKERNEL_SEED"
COMMANDS = ("run",) + tuple(OPS)
_NO_INPUT = {"suite"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tracekernel",
        description="Trace maps, trace submodules and End-ring centers over finite-field algebras.",
        epilog="subcommands: " + ", ".join(COMMANDS),
    )
    p.add_argument("command", metavar="subcommand", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("inputs", nargs="*", help="input file ('-' for stdin) and key=value task arguments")
    p.add_argument("--json", action="store_true", help="machine-readable report (schema v1)")
    p.add_argument("--seed", type=int, default=None, help=f"corpus seed (default ${SEED_ENV} or 0)")
    p.add_argument("--cutoff", type=int, default=None, help="degree cutoff for graded computations")
    p.add_argument("--ext-bound", type=int, default=None, help="largest Ext index checked")
    p.add_argument("--max-oracle", type=int, default=None, help="enumeration cap for the brute-force oracle")
    p.add_argument("--fail-fast", action="store_true", help="stop at the first task that is not ok")
    return p


def _seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise DocumentError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _split_inputs(inputs: list[str]) -> tuple[str | None, dict]:
    path = None
    args: dict = {}
    for tok in inputs:
        if "=" in tok and not os.path.exists(tok):
            key, _, val = tok.partition("=")
            if key in args:
                raise DocumentError(f"argument {key!r} given twice")
            args[key] = val
        elif path is None:
            path = tok
        else:
            raise DocumentError(f"more than one input file: {path!r} and {tok!r}")
    return path, args


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cmd = ns.command
    if cmd not in COMMANDS:
        print(f"tracekernel: unknown subcommand {cmd!r}; expected one of {', '.join(COMMANDS)}", file=sys.stderr)
        return 2
    try:
        path, args = _split_inputs(ns.inputs)
        opts = Options(
            seed=_seed(ns.seed),
            cutoff=ns.cutoff,
            ext_bound=ns.ext_bound,
            max_oracle=ns.max_oracle if ns.max_oracle is not None else Options.max_oracle,
            fail_fast=ns.fail_fast,
        )
        if path is not None:
            doc = parse(_read(path))
        elif cmd in _NO_INPUT or cmd.startswith("sgp."):
            doc = Document(None, {}, {}, {}, {}, [])
        else:
            raise DocumentError(f"{cmd} needs an input file")
        if cmd == "run":
            if args:
                raise DocumentError("run takes no key=value arguments")
            tasks = None
        elif cmd == "validate":
            tasks = [Task("validate", args, 0)]
        elif args or cmd in _NO_INPUT or path is None:
            tasks = [Task(cmd, args, 0)]
        else:
            tasks = [t for t in doc.tasks if t.op == cmd]
            if not tasks:
                raise DocumentError(f"the document has no {cmd} tasks; pass key=value arguments")
    except (DocumentError, OSError) as e:
        print(f"tracekernel: error: {e}", file=sys.stderr)
        return 2
    report: Report = run_document(doc, opts, tasks)
    print(emit(report, "json" if ns.json else "human"))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
