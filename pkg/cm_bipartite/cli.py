import json
import logging
import os
import sys
from functools import partial

import click

from cm_bipartite import __version__
from cm_bipartite.checker import find_hh_order, is_cohen_macaulay
from cm_bipartite.exceptions import (
    BoundExceeded, GeneratorError, InvalidVertex, NoHerzogHibiOrder, NotAPerfectMatching,
    OracleUnavailable, ParseError)
from cm_bipartite.generators import (
    PosetSpec, all_bipartite_graphs, poset_graph, provenance_comment, random_bipartite,
    random_poset)
from cm_bipartite.graph import graph_record, parse_graph, renumber_pairs, serialize_graph
from cm_bipartite.matching import enumerate_perfect_matchings
from cm_bipartite.oracles import oracle_report
from cm_bipartite.sweep import run_sweep
from cm_bipartite.utils import Stopwatch

logger = logging.getLogger(__name__)

EXIT_CM = 0
EXIT_NOT_CM = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3
EXIT_DISAGREEMENT = 4

red = partial(click.style, fg='red')
green = partial(click.style, fg='green')
yellow = partial(click.style, fg='yellow')


@click.group()
@click.version_option(__version__)
def main():
    """Cohen-Macaulay bipartite graph checker"""
    pass


def configure_logging(verbose, quiet, **options):
    if verbose and quiet:
        raise click.UsageError("flags --verbose and --quiet are mutually exclusive")

    level = (verbose and 'DEBUG') or (quiet and 'WARNING') or 'INFO'
    logging.basicConfig(level=level, style='{', datefmt='%H:%M:%S', stream=sys.stderr,
                        format='{asctime} {levelname:5.5} {name:>20}: {message}')


def logging_options(f):
    f = click.option('--quiet', '-q', is_flag=True, help='Show less output')(f)
    return click.option('--verbose', '-v', is_flag=True, help='Show more output')(f)


format_option = click.option('--format', 'output_format', type=click.Choice(['text', 'json']),
                             default='text', show_default=True, help='Output format')


def fail(message, code):
    click.echo(red(message), err=True)
    sys.exit(code)


def read_graph(source):
    """Parse an opened input file; input errors exit with code 2."""
    try:
        return parse_graph(source.read())
    except (ParseError, InvalidVertex) as e:
        fail(f'{source.name}: {e}', EXIT_INPUT_ERROR)


def parse_matching(value):
    """``"1:1,2:2"`` to 0-based pairs."""
    pairs = []
    for item in value.split(','):
        try:
            a, b = (int(t) for t in item.split(':'))
        except ValueError:
            raise click.BadParameter(f'{item!r} is not an a:b pair') from None
        if a < 1 or b < 1:
            raise click.BadParameter(f'{item!r}: indices are 1-based')
        pairs.append((a - 1, b - 1))
    return pairs


def emit(record, output_format, text_lines):
    if output_format == 'json':
        click.echo(json.dumps(record, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


@main.command()
@click.option('--oracle', is_flag=True, help='Cross-check with the purity and Reisner oracles')
@click.option('--matching', help='Check against this perfect matching, e.g. 1:1,2:2')
@format_option
@logging_options
@click.argument('source', type=click.File('rb'))
def check(oracle, matching, output_format, source, **options):
    """Decide whether a graph is Cohen-Macaulay"""
    configure_logging(**options)
    g, stripped = read_graph(source)
    supplied = None
    if matching:
        try:
            supplied = renumber_pairs(parse_matching(matching), stripped)
        except InvalidVertex as e:
            fail(f'--matching: {e}; labels refer to the input file', EXIT_INPUT_ERROR)

    stopwatch = Stopwatch()
    try:
        verdict = is_cohen_macaulay(g, supplied)
    except NotAPerfectMatching as e:
        fail(str(e), EXIT_INPUT_ERROR)
    record = {
        'input': source.name,
        'graph': graph_record(g),
        'stripped': [str(v) for v in stripped],
        **verdict.to_record(),
        'oracle': None,
    }
    detail = verdict.certificate or verdict.witness
    code = EXIT_CM if verdict.is_cm else EXIT_NOT_CM
    if not detail.is_valid(g):
        logger.error(f'{detail!r} does not re-check against the graph')
        code = EXIT_DISAGREEMENT

    if oracle:
        try:
            report = oracle_report(g)
        except OracleUnavailable as e:
            fail(f'oracle unavailable: {e}', EXIT_CAP_EXCEEDED)
        record['oracle'] = report
        if report['reisner'] != verdict.is_cm or report['purity'] != verdict.is_unmixed:
            logger.error(f'Oracle disagrees: reisner={report["reisner"]}, '
                         f'purity={report["purity"]}')
            code = EXIT_DISAGREEMENT
    record['timing_ms'] = stopwatch.elapsed_ms

    lines = [f'{source.name}: {g.part_a_size}x{g.part_b_size}, {g.edge_count} edges']
    if stripped:
        lines.append(yellow(f'stripped isolated vertices: {", ".join(map(str, stripped))}'))
        lines.append(yellow(f'renumbered edges: {record["graph"]["edges"]}'))
    if verdict.is_cm:
        lines.append(green('Cohen-Macaulay'))
        certificate = verdict.certificate.to_record()
        lines.append(f'matching: {certificate["matching"]}')
        lines.append(f'hh order: {certificate["hh_order"]}')
    else:
        unmixed = 'unmixed' if verdict.is_unmixed else 'not unmixed'
        lines.append(red(f'not Cohen-Macaulay ({unmixed})'))
        lines.append(verdict.witness.describe())
    if record['oracle']:
        lines.append(f'oracle: reisner={record["oracle"]["reisner"]} '
                     f'pure={record["oracle"]["purity"]}')
    if code == EXIT_DISAGREEMENT:
        lines.append(red('CROSS-CHECK DISAGREEMENT'))
    lines.append(f'{record["timing_ms"]} ms')
    emit(record, output_format, lines)
    sys.exit(code)


@main.command('oracle')
@click.option('--betti', is_flag=True, help='Print the reduced Betti numbers')
@click.option('--shellable', is_flag=True, help='Search for a shelling')
@format_option
@logging_options
@click.argument('source', type=click.File('rb'))
def oracle_command(betti, shellable, output_format, source, **options):
    """Run the brute-force oracles on a graph"""
    configure_logging(**options)
    g, _ = read_graph(source)
    try:
        report = oracle_report(g, betti=betti, shellable=shellable)
    except OracleUnavailable as e:
        fail(f'oracle unavailable: {e}', EXIT_CAP_EXCEEDED)

    lines = [f'facets: {" ".join(report["facets"])}',
             f'pure: {report["purity"]}',
             f'balanced: {report["balanced"]}',
             f'reisner: {report["reisner"]}']
    if report['failing_face']:
        face = report['failing_face']
        lines.append(f'failing face: {face["face"]} in dimension {face["dimension"]}')
    if betti:
        lines.append('betti (from dimension -1): ' + ' '.join(map(str, report['betti'])))
    if shellable:
        lines.append(f'shellable: {report["shellable"]}')
    emit(report, output_format, lines)


@main.command()
@click.option('--part-a', type=click.IntRange(min=0), help='Size of side A')
@click.option('--part-b', type=click.IntRange(min=0), help='Size of side B')
@click.option('--probability', '-p', type=float, help='Edge or relation probability')
@click.option('--elements', '-n', type=click.IntRange(min=1), help='Poset size')
@click.option('--shape', type=click.Choice(['random', 'chain', 'antichain']), default='random',
              show_default=True, help='Poset shape')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--out', type=click.Path(), help='Output file (directory for grid-all)')
@logging_options
@click.argument('kind', type=click.Choice(['grid-all', 'random', 'poset']))
def generate(kind, part_a, part_b, probability, elements, shape, seed, out, **options):
    """Generate graphs in the text format"""
    configure_logging(**options)
    try:
        if kind == 'grid-all':
            _generate_grid(part_a, part_b, out)
            return
        if kind == 'random':
            if part_a is None or part_b is None or probability is None:
                raise click.UsageError('random needs --part-a, --part-b and --probability')
            g = random_bipartite(part_a, part_b, probability, seed)
            comment = provenance_comment('random', part_a=part_a, part_b=part_b,
                                         probability=probability, seed=seed)
        else:
            if elements is None:
                raise click.UsageError('poset needs --elements')
            if shape == 'chain':
                ps = PosetSpec.chain(elements)
                comment = provenance_comment('poset', shape='chain', elements=elements)
            elif shape == 'antichain':
                ps = PosetSpec.antichain(elements)
                comment = provenance_comment('poset', shape='antichain', elements=elements)
            else:
                if probability is None:
                    raise click.UsageError('random posets need --probability')
                ps = random_poset(elements, probability, seed)
                comment = provenance_comment('poset', shape='random', elements=elements,
                                             probability=probability, seed=seed)
            g = poset_graph(ps)
    except (GeneratorError, BoundExceeded) as e:
        raise click.UsageError(str(e))
    _write(serialize_graph(g, [comment]), out)


def _generate_grid(part_a, part_b, out):
    if part_a is None or part_b is None:
        raise click.UsageError('grid-all needs --part-a and --part-b')
    try:
        graphs = list(all_bipartite_graphs(part_a, part_b))
    except (GeneratorError, BoundExceeded) as e:
        raise click.UsageError(str(e))
    width = len(str(len(graphs) - 1))
    if out:
        os.makedirs(out, exist_ok=True)
    for rank, g in enumerate(graphs):
        comment = provenance_comment('grid-all', part_a=part_a, part_b=part_b, rank=rank)
        text = serialize_graph(g, [comment])
        if out:
            _write(text, os.path.join(out, f'grid-{part_a}x{part_b}-{rank:0{width}}.txt'))
        else:
            click.echo(text, nl=False)
    if out:
        logger.info(f'Wrote {len(graphs)} graphs to {out}')


def _write(text, out):
    if out:
        with open(out, 'w') as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option('--jobs', '-j', type=click.IntRange(min=1), help='Worker processes [all cores]')
@click.option('--shellable', is_flag=True, help='Also cross-check the shellability search')
@click.option('--no-orders', is_flag=True, help='Skip the brute-force order searches')
@format_option
@logging_options
@click.argument('part_a', type=click.IntRange(min=0))
@click.argument('part_b', type=click.IntRange(min=0))
def sweep(jobs, shellable, no_orders, output_format, part_a, part_b, **options):
    """Cross-check every graph on a small grid"""
    configure_logging(**options)
    stopwatch = Stopwatch()
    try:
        summary = run_sweep(part_a, part_b, jobs=jobs, shellable=shellable,
                            orders=not no_orders)
    except BoundExceeded as e:
        fail(str(e), EXIT_INPUT_ERROR)
    except OracleUnavailable as e:
        fail(f'oracle unavailable: {e}', EXIT_CAP_EXCEEDED)
    record = summary.to_record()
    record['timing_ms'] = stopwatch.elapsed_ms

    disagreements = str(summary.disagreements)
    lines = [
        f'{"grid":<16} {part_a}x{part_b}',
        f'{"total":<16} {summary.total}',
        f'{"cm":<16} {summary.cm}',
        f'{"unmixed":<16} {summary.unmixed}',
        f'{"unmixed_not_cm":<16} {summary.unmixed_not_cm}',
        f'{"disagreements":<16} ' + (red(disagreements) if summary.disagreements
                                      else green(disagreements)),
    ]
    for rank, messages in summary.examples:
        lines.append(f'  rank {rank}: ' + '; '.join(messages))
    emit(record, output_format, lines)
    sys.exit(EXIT_DISAGREEMENT if summary.disagreements else 0)


@main.command()
@click.option('--cap', type=click.IntRange(min=1), help='Stop after this many matchings')
@format_option
@logging_options
@click.argument('source', type=click.File('rb'))
def matchings(cap, output_format, source, **options):
    """List the perfect matchings of a graph"""
    configure_logging(**options)
    g, _ = read_graph(source)
    found, truncated = enumerate_perfect_matchings(g, cap)
    record = {'count': len(found), 'truncated': truncated,
              'matchings': [m.to_record() for m in found]}
    lines = [str(m.to_record()) for m in found]
    lines.append(f'{len(found)} perfect matching(s)' + (yellow(' (truncated)') if truncated
                                                         else ''))
    emit(record, output_format, lines)


@main.command('hh-order')
@format_option
@logging_options
@click.argument('source', type=click.File('rb'))
def hh_order(output_format, source, **options):
    """Print a Herzog-Hibi ordering of the matched pairs"""
    configure_logging(**options)
    g, _ = read_graph(source)
    verdict = is_cohen_macaulay(g)
    if not verdict.is_cm:
        emit({'hh_order': None, 'witness': verdict.witness.to_record()}, output_format,
             [red('not Cohen-Macaulay'), verdict.witness.describe()])
        sys.exit(EXIT_NOT_CM)
    m = verdict.certificate.matching
    try:
        order = find_hh_order(g, m)
    except NoHerzogHibiOrder as e:
        fail(f'no order for a CM graph: {e}', EXIT_DISAGREEMENT)
    pairs = [m[i] for i in order]
    record = {'hh_order': [i + 1 for i in order],
              'pairs': [[a + 1, b + 1] for a, b in pairs]}
    lines = [f'{position}: a{a + 1} b{b + 1}'
             for position, (a, b) in enumerate(pairs, start=1)]
    emit(record, output_format, lines)


if __name__ == '__main__':
    main()
