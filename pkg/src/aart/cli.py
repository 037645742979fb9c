#  Copyright (c) 2024-2025. Affects AI LLC
#
#  Licensed under the Creative Common CC BY-NC-SA 4.0 International License (the "License");
#  you may not use this file except in compliance with the License. The full text of the License is
#  provided in the included LICENSE file. If this file is not available, you may obtain a copy of the
#  License at
#
#       https://creativecommons.org/licenses/by-nc-sa/4.0/deed.en
#
#  Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
#  express or implied. See the License for the specific language governing permissions and limitations
#  under the License.

"""
The aart command line:

    aart [--seed N] [--jobs N] [--format json|csv] [--config FILE] [-v] <command> ...

    generate      write an event corpus (sVELO, or a toy fixture with --toy)
    reconstruct   run the grid or multi-start retina over a corpus
    evaluate      match candidates against the corpus truth
    figure        write the data behind a response-map or efficiency figure
    experiment    run an efficiency-versus-multiplicity experiment
    rerun         repeat a run from its manifest and check the outputs are identical

Every command writing a file also writes <file>.manifest.json. Exit codes: 0 success, 1 failed assertion, 2 usage
error, 3 I/O or integrity error.
"""
import argparse
import copy
import csv
import io
import json
import logging
import math
import sys

import numpy as np

from aart import __version__, config
from aart.config import load_config
from aart.evaluation import COST_POINTS, EFFICIENCY_FIXTURES, RESPONSE_MAP_FIXTURES, TOY_AXES, EventCandidates, \
    ExperimentSpec, ExperimentRunner, MatchSummary, compute_budget, count_response_units, default_n_grid, \
    match_candidates, measure_costs, read_candidates, reconstruction_rng, response_map_fixture, write_candidates, \
    write_figure_csv, write_results_csv
from aart.exceptions import ConfigError, CorpusFormatError, ExperimentError, IntegrityError
from aart.geometry import DetectorGeometry
from aart.grid import GridRetina, ParamGrid
from aart.optimize import MultiStartRetina, OptimizerConfig, UniformBoxPrior
from aart.retina import DistanceModelKind, ResponseCounter, RetinaConfig
from aart.RunManifest import RunManifest, manifest_path
from aart.simulation import SimConfig, SVeloSimulator, TOY_FORMAT_NAME, close_tracks_event, corpus_format, \
    read_corpus, read_toy_corpus, two_track_event, write_corpus, write_toy_corpus

logger = logging.getLogger('aart')

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_INTEGRITY = 3


def _typed(convert, check, description):
    def parse(text):
        try:
            value = convert(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f'invalid value {text!r}')
        if not check(value):
            raise argparse.ArgumentTypeError(f'{text} is not {description}')
        return value
    return parse


non_negative_int = _typed(int, lambda v: v >= 0, 'a non-negative integer')
positive_int = _typed(int, lambda v: v >= 1, 'a positive integer')
positive_float = _typed(float, lambda v: math.isfinite(v) and v > 0, 'a positive number')
non_negative_float = _typed(float, lambda v: math.isfinite(v) and v >= 0, 'a non-negative number')
probability = _typed(float, lambda v: 0 <= v <= 1, 'a probability')
fraction = _typed(float, lambda v: 0 < v <= 1, 'in (0, 1]')


def build_parser():
    parser = argparse.ArgumentParser(prog='aart', description='Artificial Retina track finding')
    parser.add_argument('--seed', type=non_negative_int, default=None,
                        help="master rng seed, defaults to config['simulation']['rng_seed']")
    parser.add_argument('--jobs', type=positive_int, default=1, help='worker threads or processes')
    parser.add_argument('--format', choices=['json', 'csv'], default='json', help='format of the printed summary')
    parser.add_argument('--config', default=None, help='YAML file merged over the default configuration')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    parser.add_argument('--version', action='version', version=f'aart {__version__}')
    commands = parser.add_subparsers(dest='command', required=True)

    generate = commands.add_parser('generate', help='write an event corpus')
    generate.add_argument('-o', '--output', required=True)
    generate.add_argument('--events', type=positive_int, default=1)
    generate.add_argument('--tracks', type=non_negative_int)
    generate.add_argument('--layers', type=positive_int)
    generate.add_argument('--z-extent', type=positive_float)
    generate.add_argument('--r-inner', type=non_negative_float)
    generate.add_argument('--r-outer', type=positive_float)
    generate.add_argument('--p-hit', type=probability)
    generate.add_argument('--noise-mean', type=non_negative_float)
    generate.add_argument('--smear', type=positive_float)
    generate.add_argument('--n-min', type=positive_int)
    generate.add_argument('--eta-range', type=float, nargs=2)
    generate.add_argument('--phi-window', type=positive_float)
    generate.add_argument('--toy', choices=['fig1', 'fig2'], help='write toy-model fixture events instead')
    generate.set_defaults(handler=cmd_generate)

    reconstruct = commands.add_parser('reconstruct', help='reconstruct the events of a corpus')
    reconstruct.add_argument('corpus')
    reconstruct.add_argument('-o', '--output', required=True)
    reconstruct.add_argument('--method', choices=['grid', 'multistart'], required=True)
    reconstruct.add_argument('--alpha', type=positive_float, help='budget fraction of a grid search')
    reconstruct.add_argument('--n-seeds', type=positive_int, help='number of seeds, overrides --alpha')
    reconstruct.add_argument('--step', type=positive_float, help='grid spacing, defaults to --epsilon')
    reconstruct.add_argument('--epsilon', type=positive_float, help='resolution the grid cell count is based on')
    reconstruct.add_argument('--sigma', type=positive_float, help='bandwidth of the grid or of every optimizer step')
    reconstruct.add_argument('--sigma-schedule', type=positive_float, nargs='+')
    reconstruct.add_argument('--R0', type=float, dest='R_0', help='response threshold')
    reconstruct.add_argument('--prior', choices=['physical', 'uniform'])
    reconstruct.add_argument('--update', choices=['truncated_newton', 'gradient_ascent'])
    reconstruct.add_argument('--cluster-radius', type=non_negative_float)
    reconstruct.set_defaults(handler=cmd_reconstruct)

    evaluate = commands.add_parser('evaluate', help='match candidates to the true tracks')
    evaluate.add_argument('corpus')
    evaluate.add_argument('candidates')
    evaluate.add_argument('-o', '--output', required=True, help='per-event results CSV')
    evaluate.add_argument('--epsilon', type=positive_float)
    evaluate.add_argument('--strict-params', action='store_true', help='require |d theta| and |d phi| <= epsilon')
    evaluate.add_argument('--assert-efficiency', type=fraction, help='exit 1 when the efficiency is lower')
    evaluate.set_defaults(handler=cmd_evaluate)

    figure = commands.add_parser('figure', help='write figure data')
    figure.add_argument('name', choices=list(RESPONSE_MAP_FIXTURES) + list(EFFICIENCY_FIXTURES))
    figure.add_argument('-o', '--output', required=True)
    _experiment_arguments(figure)
    figure.set_defaults(handler=cmd_figure)

    experiment = commands.add_parser('experiment', help='run an efficiency experiment')
    experiment.add_argument('-o', '--output', required=True, help='results CSV')
    experiment.add_argument('--figure-output', help='also write the efficiency curve CSV here')
    experiment.add_argument('--alphas', type=positive_float, nargs='+')
    _experiment_arguments(experiment)
    experiment.set_defaults(handler=cmd_experiment)

    rerun = commands.add_parser('rerun', help='repeat a run from its manifest')
    rerun.add_argument('manifest')
    rerun.set_defaults(handler=cmd_rerun)
    return parser


def _experiment_arguments(parser):
    parser.add_argument('--multiplicities', type=positive_int, nargs='+')
    parser.add_argument('--events-per-point', type=positive_int)
    parser.add_argument('--phi-window', type=positive_float, help='reduced acceptance for events, seeds and grid')
    parser.add_argument('--n-grid', type=positive_int, help='grid cell count the budget is a fraction of')
    parser.add_argument('--p-hit', type=probability)
    parser.add_argument('--noise-mean', type=non_negative_float)
    parser.add_argument('--strict-params', action='store_true')
    parser.add_argument('--wall-time', action='store_true', help='record wall time, which makes results irreproducible')


def _seed(args):
    return config['simulation']['rng_seed'] if args.seed is None else args.seed


def _given(**values):
    return {k: v for k, v in values.items() if v is not None}


def _emit(args, rows):
    """Prints summary rows to stdout in the --format format."""
    if args.format == 'json':
        print(json.dumps(rows if len(rows) != 1 else rows[0], sort_keys=True))
        return
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()) if rows else [], lineterminator='\n')
    writer.writeheader()
    writer.writerows(rows)
    print(out.getvalue(), end='')


def _write_manifest(args, output, seeds, inputs=(), outputs=(), accounting=None):
    RunManifest.for_files(args.command, args.argv, copy.deepcopy(config), seeds, __version__,
                          inputs, outputs or (output,), accounting).write(manifest_path(output))


def cmd_generate(args):
    seed = _seed(args)
    seeds = [seed + i for i in range(args.events)]

    if args.toy is not None:
        make = two_track_event if args.toy == 'fig1' else close_tracks_event
        count = write_toy_corpus(args.output, (make(s) for s in seeds))
    else:
        geometry = DetectorGeometry.equally_spaced(args.layers, args.z_extent, args.r_inner, args.r_outer)
        sim_config = SimConfig(geometry=geometry, **_given(n_tracks=args.tracks, p_hit=args.p_hit,
                                                           noise_mean=args.noise_mean, smear_sigma=args.smear,
                                                           n_min=args.n_min, phi_window=args.phi_window,
                                                           eta_range=args.eta_range))
        count = write_corpus(args.output, SVeloSimulator(sim_config).generate_events(seeds))

    _write_manifest(args, args.output, seeds)
    _emit(args, [{'events': count, 'output': args.output}])
    return EXIT_OK


def _toy_ranges():
    fig = config['toy']['fig1']
    return fig['angle_range'], fig['offset_range'], fig['sigma'], fig['step']


def _reconstructor(args, toy, phi_window):
    """
    :return: (callable(hits, rng, counter) -> candidates, n_seeds or None, callable(hits, rng) -> CostReport)
    """
    epsilon = args.epsilon if args.epsilon is not None else config['evaluation']['epsilon']

    if toy:
        angle_range, offset_range, toy_sigma, toy_step = _toy_ranges()
        kind = DistanceModelKind.TOY_2D
        ranges = (angle_range, offset_range)
        sigma = args.sigma if args.sigma is not None else toy_sigma
        step = args.step if args.step is not None else toy_step
    else:
        kind = DistanceModelKind.SVELO_3D
        phi_range = config['grid']['phi_range'] if phi_window is None else (-phi_window / 2, phi_window / 2)
        ranges = (config['grid']['theta_range'], phi_range)
        sigma = args.sigma if args.sigma is not None else config['retina']['sigma']
        step = args.step if args.step is not None else epsilon

    if args.method == 'grid':
        grid = ParamGrid.from_step(ranges[0], ranges[1], step)
        logger.info(f'Grid of {grid.n_theta} x {grid.n_phi} = {grid.n_cells} cells, sigma={sigma}')
        retina_config = RetinaConfig(sigma, kind)
        retina = GridRetina(grid, retina_config, args.R_0, args.jobs)
        box = UniformBoxPrior(ranges[0], ranges[1])
        return ((lambda hits, rng, counter: retina.reconstruct(hits, counter)[0]), None,
                lambda hits, rng: measure_costs(hits, retina_config, box.draw(COST_POINTS, rng)))

    options = _given(sigma_schedule=args.sigma_schedule or ([args.sigma] if args.sigma is not None else None),
                     R_0=args.R_0, method=args.update, cluster_radius=args.cluster_radius)
    if toy:
        options.setdefault('sigma_schedule', [sigma])
        prior = UniformBoxPrior(ranges[0], ranges[1])
    else:
        prior = args.prior if args.prior is not None else config['optimizer']['prior']
    opt = OptimizerConfig(prior=prior, distance_model=kind, phi_window=None if toy else phi_window, **options)

    if args.n_seeds is not None:
        n_seeds = args.n_seeds
    else:
        alpha = args.alpha if args.alpha is not None else config['evaluation']['alphas'][0]
        n_grid = default_n_grid(epsilon, phi_window, *ranges) if not toy else \
            ParamGrid.from_step(ranges[0], ranges[1], step).n_cells
        n_seeds = compute_budget(alpha, n_grid, opt.q, opt.cost_C0).n_seeds
        logger.info(f'alpha={alpha}, n_grid={n_grid}, q={opt.q}, C0={opt.cost_C0}: n_seeds={n_seeds}')

    retina = MultiStartRetina(opt.with_n_seeds(n_seeds), args.jobs)

    def costs(hits, rng):
        points = kind.create().project(opt.seed_prior().draw(COST_POINTS, rng))
        return measure_costs(hits, opt.final_retina_config, points, opt.make_update(), opt.cost_C0)

    return (lambda hits, rng, counter: retina.reconstruct(hits, rng, counter).candidates), n_seeds, costs


def cmd_reconstruct(args):
    seed = _seed(args)
    toy = corpus_format(args.corpus) == TOY_FORMAT_NAME
    events = list(read_toy_corpus(args.corpus) if toy else read_corpus(args.corpus))
    phi_window = None if toy or not events else events[0].config_snapshot.phi_window

    reconstruct, n_seeds, costs = _reconstructor(args, toy, phi_window)

    results = []
    total = ResponseCounter()
    for event in events:
        counter = ResponseCounter()
        hits = event.hits if toy else event.coordinates
        candidates = reconstruct(hits, reconstruction_rng(seed, event.seed), counter)
        accounting = count_response_units(counter).to_dict()
        results.append(EventCandidates(event.seed, args.method, tuple(candidates), accounting, n_seeds,
                                       DistanceModelKind.TOY_2D.value if toy else DistanceModelKind.SVELO_3D.value))
        total = total.merge(counter)
        logger.info(f'Event {event.seed}: {len(candidates)} candidates, {counter.units} response-units')

    write_candidates(args.output, results)

    cost = {}
    if events:
        first = events[0]
        cost = costs(first.hits if toy else first.coordinates, np.random.default_rng(seed)).to_dict()
    _write_manifest(args, args.output, [seed] + [e.seed for e in events], inputs=[args.corpus],
                    accounting=dict(total.to_dict(), cost_model=cost))
    _emit(args, [dict({'events': len(results), 'candidates': sum(len(r.candidates) for r in results),
                       'n_seeds': n_seeds, 'response_units': total.units}, **cost)])
    return EXIT_OK


def cmd_evaluate(args):
    if corpus_format(args.corpus) == TOY_FORMAT_NAME:
        raise ConfigError('evaluate matches sVELO tracks, got a toy corpus')
    events = list(read_corpus(args.corpus))
    reconstructed = list(read_candidates(args.candidates))

    event_seeds = [e.seed for e in events]
    candidate_seeds = [r.seed for r in reconstructed]
    if event_seeds != candidate_seeds:
        raise IntegrityError(f'{args.candidates} does not belong to {args.corpus}: event seeds {event_seeds[:5]}... '
                             f'vs {candidate_seeds[:5]}...')

    reports = []
    with open(args.output, 'w', newline='') as f:
        writer = None
        for event, result in zip(events, reconstructed):
            report = match_candidates(result.candidates, event.true_tracks, args.epsilon, args.strict_params)
            reports.append(report)
            row = dict(seed=event.seed, **report.to_dict())
            if writer is None:
                writer = csv.DictWriter(f, fieldnames=list(row.keys()))
                writer.writeheader()
            writer.writerow(row)

    summary = MatchSummary.of(reports)
    _write_manifest(args, args.output, event_seeds, inputs=[args.corpus, args.candidates])
    _emit(args, [{'events': summary.n_events, 'tracks': summary.n_truths, 'matched': summary.n_matched,
                  'efficiency': summary.efficiency, 'err': summary.efficiency_error,
                  'ghost_rate': summary.ghost_rate}])

    if args.assert_efficiency is not None and summary.efficiency < args.assert_efficiency:
        logger.error(f'Efficiency {summary.efficiency:.4f} is below {args.assert_efficiency}')
        return EXIT_ASSERTION
    return EXIT_OK


def _experiment_spec(args, alphas):
    sim_options = _given(p_hit=args.p_hit, noise_mean=args.noise_mean, phi_window=args.phi_window)
    values = _given(multiplicities=args.multiplicities, events_per_point=args.events_per_point, n_grid=args.n_grid)
    if alphas is not None:
        values['alphas'] = alphas
    return ExperimentSpec(rng_seed=_seed(args), sim_config=SimConfig(**sim_options),
                          optimizer_config=OptimizerConfig(**_given(phi_window=args.phi_window)),
                          strict_params=args.strict_params, record_wall_time=args.wall_time, **values)


def _spec_seeds(spec):
    return [spec.rng_seed]


def cmd_figure(args):
    if args.name in EFFICIENCY_FIXTURES:
        alpha = config['evaluation']['alphas'][EFFICIENCY_FIXTURES[args.name]]
        spec = _experiment_spec(args, [alpha])
        rows = ExperimentRunner(spec, args.jobs).run()
        write_figure_csv(args.output, rows)
        _write_manifest(args, args.output, _spec_seeds(spec))
        _emit(args, [{'multiplicity': r['multiplicity'], 'alpha': r['alpha'], 'efficiency': r['efficiency'],
                      'err': r['err']} for r in rows])
        return EXIT_OK

    seed = _seed(args)
    response_map = response_map_fixture(args.name, seed)
    response_map.response_grid.to_csv(args.output, TOY_AXES)
    _write_manifest(args, args.output, [seed])
    _emit(args, [{'fixture': args.name, 'sigma': response_map.sigma, 'local_maxima': len(response_map.maxima)}])
    return EXIT_OK


def cmd_experiment(args):
    spec = _experiment_spec(args, args.alphas)
    runner = ExperimentRunner(spec, args.jobs)
    rows = runner.run()
    cost = runner.cost_report()
    write_results_csv(args.output, rows)
    outputs = [args.output]
    if args.figure_output:
        write_figure_csv(args.figure_output, rows)
        outputs.append(args.figure_output)

    _write_manifest(args, args.output, _spec_seeds(spec), outputs=outputs, accounting={'cost_model': cost.to_dict()})
    _emit(args, [{k: r[k] for k in ('multiplicity', 'alpha', 'n_seeds', 'efficiency', 'err', 'budget_exceeded')}
                 for r in rows])
    if any(r['budget_exceeded'] for r in rows):
        logger.warning('At least one run exceeded its response-unit budget')
    return EXIT_OK


def cmd_rerun(args):
    manifest = RunManifest.load(args.manifest)
    manifest.verify_inputs()
    code = main(manifest.argv, resolved_config=manifest.config)
    if code != EXIT_OK:
        return code

    changed = manifest.verify_outputs()
    if changed:
        raise IntegrityError('Rerun produced different outputs: {}'.format(', '.join(changed)))
    _emit(args, [{'manifest': args.manifest, 'reproduced': sorted(manifest.outputs)}])
    return EXIT_OK


def _apply_config(values):
    config.clear()
    config.update(copy.deepcopy(values))


def main(argv=None, resolved_config=None):
    """
    Runs the command line. Configuration precedence: flags, then the --config file, then the defaults; a rerun uses the
    resolved configuration recorded in its manifest instead of the file.

    :return: the exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    args.argv = argv

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')

    saved = copy.deepcopy(config)
    try:
        if resolved_config is not None:
            _apply_config(resolved_config)
        elif args.config is not None:
            _apply_config(load_config(args.config))
        return args.handler(args)
    except ConfigError as e:
        logger.error(f'Configuration error: {e}')
        return EXIT_USAGE
    except (CorpusFormatError, IntegrityError, ExperimentError, OSError) as e:
        logger.error(str(e))
        return EXIT_INTEGRITY
    except ValueError as e:
        logger.error(f'Invalid argument: {e}')
        return EXIT_USAGE
    except Exception as e:
        logger.exception(f'Unexpected failure: {e}')
        return EXIT_INTEGRITY
    finally:
        _apply_config(saved)


if __name__ == '__main__':
    sys.exit(main())
