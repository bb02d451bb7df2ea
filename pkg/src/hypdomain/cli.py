"""
Command line interface.

    hypdomain compute <in> [--out <json>] [--svg <file>] [--dump-stages <dir>]
                           [--tol <x>] [--flip-cap <n>] [--samples <n>] [--seed <n>]
    hypdomain generate regular --genus <g> [--out <json>]
    hypdomain generate symmetric --genus <g> [--seed <n>] [--out <json>]
    hypdomain validate <in> [--tol <x>]

Exit codes: 0 success, 1 input or I/O error, 2 validation failure,
3 numerical failure.

"""
import argparse
import logging
import os
import sys
from dataclasses import replace

from hypdomain import generators, pipeline
from hypdomain.combinatorial_map import build, load_polygon_input, validate
from hypdomain.exceptions import HypDomainError


def cmd_compute(args):
    config = pipeline.PipelineConfig.from_ini()
    if args.tol is not None:
        config = config.with_geom_tolerance(args.tol)
    config = replace(config,
                     flip_cap=args.flip_cap if args.flip_cap is not None else config.flip_cap,
                     samples=args.samples if args.samples is not None else config.samples,
                     seed=args.seed if args.seed is not None else config.seed,
                     dump_stages=args.dump_stages, out=args.out, svg=args.svg)
    raw = load_polygon_input(args.input)
    result = pipeline.run_pipeline(raw, config)

    out = config.out or os.path.splitext(args.input)[0] + '_dirichlet.json'
    pipeline.write_json(result.domain.to_json_dict(), out)
    if config.dump_stages:
        pipeline.write_stages(result, config.dump_stages)
    if config.svg:
        from hypdomain.render import render_result
        render_result(result, config.svg)

    domain = result.domain
    print(f"genus {domain.genus}: Dirichlet domain with {domain.n_sides} sides, "
          f"area {domain.area!r}, perimeter {domain.perimeter!r}")
    print(f"flips {result.flip_stats.flips}, base point moved {result.relocation.c_len!r} "
          f"(ratio {result.relocation.ratio:.4f})")
    print(result.verification.to_text())
    print(f"written to {out}")
    return 0 if result.verification.passed else 3


def cmd_generate(args):
    if args.kind == 'regular':
        raw = generators.regular_polygon(args.genus)
    else:
        raw = generators.symmetric_polygon(args.genus, args.seed or 0)
    text = pipeline.dumps(raw.to_json_dict())
    if args.out:
        with open(args.out, 'w') as sink:
            sink.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args):
    config = pipeline.PipelineConfig.from_ini()
    if args.tol is not None:
        config = config.with_geom_tolerance(args.tol)
    tol = config.tol
    polygon = build(load_polygon_input(args.input), tol['geom'])
    report = validate(polygon, tol['angle'])
    print(report.to_text())
    return 0 if report.passed else 2


def parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--verbose', action='store_true', help='log debug messages')
    common.add_argument('--log-file', help='write log messages to this file')

    main_parser = argparse.ArgumentParser(prog='hypdomain',
                                          description='Dirichlet domains of hyperbolic surfaces')
    commands = main_parser.add_subparsers(dest='command', required=True)

    compute = commands.add_parser('compute', parents=[common],
                                  help='compute a Dirichlet domain from a polygon file')
    compute.add_argument('input')
    compute.add_argument('--out', help='Dirichlet domain JSON path')
    compute.add_argument('--svg', help='render all stages to this SVG file')
    compute.add_argument('--dump-stages', help='directory for intermediate stage JSON files')
    compute.add_argument('--tol', type=float, help='geometric tolerance, others scale with it')
    compute.add_argument('--flip-cap', type=int)
    compute.add_argument('--samples', type=int)
    compute.add_argument('--seed', type=int)
    compute.set_defaults(func=cmd_compute)

    generate = commands.add_parser('generate', parents=[common], help='write a fixture polygon')
    generate.add_argument('kind', choices=['regular', 'symmetric'])
    generate.add_argument('--genus', type=int, required=True)
    generate.add_argument('--seed', type=int)
    generate.add_argument('--out')
    generate.set_defaults(func=cmd_generate)

    check = commands.add_parser('validate', parents=[common], help='check a polygon file')
    check.add_argument('input')
    check.add_argument('--tol', type=float, help='geometric tolerance, others scale with it')
    check.set_defaults(func=cmd_validate)
    return main_parser


def main(argv=None):
    args = parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        filename=args.log_file,
                        format='%(asctime)s %(levelname)s %(message)s')
    try:
        return args.func(args)
    except HypDomainError as error:
        print(f"{type(error).__name__}: {error}", file=sys.stderr)
        return error.exit_code
    except (OSError, ValueError) as error:
        print(f"{type(error).__name__}: {error}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
