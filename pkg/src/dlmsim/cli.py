"""Command-line interface: run configs, reproduce figure presets, serve."""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import harness


def _write(columns, rows, out):
    if out:
        harness.emit_csv(columns, rows, out)
        print(f"wrote {len(rows)} rows to {out}")
    else:
        print(",".join(columns))
        for row in rows:
            print(",".join(harness._format(v) for v in row))


def cmd_run(args):
    with open(args.config, encoding="utf-8") as fh:
        cfg = harness.parse_config(fh.read())
    overrides = {}
    if args.alpha is not None:
        overrides["alpha"] = args.alpha
    if args.events is not None:
        overrides["events_per_block"] = args.events
    if args.blocks is not None:
        overrides["blocks"] = args.blocks
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.backend is not None:
        overrides["backend"] = args.backend
    if overrides:
        cfg = replace(cfg, **overrides)
        cfg.validate()
    columns, rows = harness.run_scenario(cfg)
    _write(columns, rows, args.out)


def cmd_list_scenarios(args):
    for name in harness.SCENARIOS:
        print(name)


def cmd_reproduce(args):
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.events is not None:
        overrides["events_per_block"] = args.events
    if args.blocks is not None:
        overrides["blocks"] = args.blocks
    columns, rows = harness.reproduce(args.figure_id, **overrides)
    _write(columns, rows, args.out)


def cmd_serve(args):
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="dlmsim",
        description="Event-by-event learning-machine interference simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario from a config file")
    p_run.add_argument("config", help="path to a key = value config file")
    p_run.add_argument("--alpha", type=float)
    p_run.add_argument("--events", type=int,
                       help="events per block override")
    p_run.add_argument("--blocks", type=int)
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--backend", choices=["dlm", "slm"])
    p_run.add_argument("--out", help="CSV output path (default: stdout)")
    p_run.set_defaults(func=cmd_run)

    p_list = sub.add_parser("list-scenarios", help="list scenario names")
    p_list.set_defaults(func=cmd_list_scenarios)

    p_rep = sub.add_parser("reproduce",
                           help="run a canned figure-reproduction preset")
    p_rep.add_argument("figure_id", choices=sorted(harness.FIGURES))
    p_rep.add_argument("--seed", type=int)
    p_rep.add_argument("--events", type=int)
    p_rep.add_argument("--blocks", type=int)
    p_rep.add_argument("--out", help="CSV output path (default: stdout)")
    p_rep.set_defaults(func=cmd_reproduce)

    p_srv = sub.add_parser("serve", help="start the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)
    p_srv.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
