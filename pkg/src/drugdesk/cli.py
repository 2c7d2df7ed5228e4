"""Command-line front door. One subcommand group per module, plus the
full pipeline runner and the HTTP service launcher. Every command prints
machine-readable JSON (or CSV via --out) so shell runs can be checked
the same way library calls are."""

from __future__ import annotations

import dataclasses
import functools
import json

import click

from .fixtures import fixture_path
from .kgraph import (
    entity_linking,
    find_related_paths,
    get_graph_schema,
    ingest_edges,
    node_id,
    parse_pattern,
)
from .molgraph import canonical_smiles, descriptors, morgan_fingerprint, parse_smiles, tanimoto
from .optimizer import OptimizerConfig, optimize
from .orchestrator import (
    AutoApproveProvider,
    InteractiveProvider,
    PipelineRequest,
    load_request,
    load_script,
    run_pipeline,
    write_result_json,
    write_trace_jsonl,
)
from .pbpk import (
    DoseRegimen,
    derive_params,
    load_regimen,
    pk_metrics,
    simulate,
    write_profile_csv,
)
from .pharmacologist import categories_to_penalties, predict_admet
from .screening import load_library, load_pockets, screen_library, write_ranked_csv


def friendly(fn):
    """Surface domain errors as clean one-line failures, not tracebacks."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except (ValueError, KeyError, OSError, RuntimeError) as exc:
            raise click.ClickException(f"{type(exc).__name__}: {exc}") from exc

    return wrapper


def emit_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


@click.group()
def main():
    """Deterministic desk-scale drug-candidate workbench."""


# ---------------------------------------------------------------- kg


@main.group()
def kg():
    """Knowledge-graph ingestion and path queries."""


@kg.command("ingest")
@click.argument("edges", type=click.Path(exists=True, dir_okay=False))
@click.option("--synonyms", type=click.Path(exists=True, dir_okay=False),
              help="alias<TAB>canonical synonym table")
@friendly
def kg_ingest(edges, synonyms):
    """Load an edge TSV and print the graph schema (node/relation counts)."""
    store = ingest_edges(edges, synonyms)
    emit_json({
        "nodes": len(store.nodes),
        "edges": len(store.edges),
        "schema": get_graph_schema(store),
    })


@kg.command("query")
@click.argument("edges", type=click.Path(exists=True, dir_okay=False))
@click.argument("pattern")
@click.option("--synonyms", type=click.Path(exists=True, dir_okay=False))
@click.option("--link", "mention",
              help="resolve start nodes by entity linking on this text")
@click.option("--json", "as_json", is_flag=True, help="structured output")
@friendly
def kg_query(edges, pattern, synonyms, mention, as_json):
    """Run a path pattern like '(Disease:"x")-[DISEASE_PROTEIN]->(Gene_protein)'."""
    store = ingest_edges(edges, synonyms)
    pat = parse_pattern(pattern)

    if mention is not None:
        types = (pat.start_type,) if pat.start_type else None
        linked = entity_linking(mention, store, node_types=types)
        start_ids = [n.id for n in linked.exact_matches or linked.contains_matches]
        if not start_ids:
            raise click.ClickException(f"no node linked for {mention!r}")
    elif pat.start_name is not None:
        if pat.start_type is None:
            raise click.ClickException("a quoted start name needs a node type")
        start_ids = [node_id(pat.start_type, pat.start_name)]
    elif pat.start_type is not None:
        start_ids = sorted(nid for nid, node in store.nodes.items()
                           if node.type == pat.start_type)
    else:
        start_ids = sorted(store.nodes)

    result = find_related_paths(start_ids, list(pat.relations), store,
                                node_types=list(pat.node_types))
    if as_json:
        emit_json({
            "relaxed": result.relaxed,
            "paths": [{"nodes": list(p.nodes), "relations": list(p.relations)}
                      for p in result.paths],
        })
        return
    if result.relaxed:
        click.echo("# no strict match; relation constraints relaxed", err=True)
    for path in result.paths:
        parts = [path.nodes[0]]
        for rel, node in zip(path.relations, path.nodes[1:]):
            parts.append(f"-[{rel}]-> {node}")
        click.echo(" ".join(parts))
    click.echo(f"# {len(result.paths)} path(s)", err=True)


# ---------------------------------------------------------------- mol


@main.group()
def mol():
    """Molecule parsing, descriptors, and similarity."""


@mol.command("describe")
@click.argument("smiles")
@friendly
def mol_describe(smiles):
    """Print canonical form and the physchem descriptor set."""
    molecule = parse_smiles(smiles)
    doc = dataclasses.asdict(descriptors(molecule))
    doc["canonical"] = canonical_smiles(smiles)
    emit_json(doc)


@mol.command("fp")
@click.argument("smiles")
@click.option("--radius", default=2, show_default=True)
@click.option("--nbits", default=2048, show_default=True)
@friendly
def mol_fp(smiles, radius, nbits):
    """Print the circular substructure fingerprint as hex."""
    fp = morgan_fingerprint(parse_smiles(smiles), radius=radius, nbits=nbits)
    emit_json({"width": fp.width, "popcount": fp.popcount, "hex": fp.to_hex()})


@mol.command("tanimoto")
@click.argument("smiles_a")
@click.argument("smiles_b")
@click.option("--radius", default=2, show_default=True)
@click.option("--nbits", default=2048, show_default=True)
@friendly
def mol_tanimoto(smiles_a, smiles_b, radius, nbits):
    """Print the Tanimoto similarity of two molecules."""
    fa = morgan_fingerprint(parse_smiles(smiles_a), radius=radius, nbits=nbits)
    fb = morgan_fingerprint(parse_smiles(smiles_b), radius=radius, nbits=nbits)
    click.echo(repr(tanimoto(fa, fb)))


# ---------------------------------------------------------------- screen


@main.command("screen")
@click.argument("library", type=click.Path(exists=True, dir_okay=False))
@click.option("--pockets", type=click.Path(exists=True, dir_okay=False),
              default=str(fixture_path("pockets.txt")), show_default=False,
              help="pocket definition file (default: bundled)")
@click.option("--pocket-row", default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="write full ranking CSV")
@click.option("--top", default=10, show_default=True)
@friendly
def screen(library, pockets, pocket_row, out, top):
    """Rank a SMILES library against a binding pocket."""
    entries = load_library(library)
    rows = load_pockets(pockets)
    if not 0 <= pocket_row < len(rows):
        raise click.ClickException(f"pocket-row must be in 0..{len(rows) - 1}")
    result = screen_library(entries, rows[pocket_row])
    for skip in result.skipped:
        click.echo(f"# skipped {skip.smiles!r}: {skip.reason}", err=True)
    for rank, cand in enumerate(result.ranked[:top], start=1):
        label = f"  ({cand.label})" if cand.label else ""
        click.echo(f"{rank:3d}  {cand.score:10.3f}  {cand.canonical}{label}")
    if out:
        write_ranked_csv(result, out)
        click.echo(f"# ranking written to {out}", err=True)


# ---------------------------------------------------------------- optimize


@main.command("optimize")
@click.argument("seeds", nargs=-1)
@click.option("--seed-file", type=click.Path(exists=True, dir_okay=False),
              help="SMILES library to start from (instead of arguments)")
@click.option("--pockets", type=click.Path(exists=True, dir_okay=False),
              default=str(fixture_path("pockets.txt")))
@click.option("--pocket-row", default=0, show_default=True)
@click.option("--generations", default=3, show_default=True)
@click.option("--mutants-per-parent", default=5, show_default=True)
@click.option("--select-budget", default=10, show_default=True)
@click.option("--seed", default=0, show_default=True, help="random stream seed")
@click.option("--penalize", multiple=True,
              help="liability category to penalize (repeatable)")
@click.option("--log-dir", type=click.Path(file_okay=False),
              help="write generations.csv and result.json here")
@friendly
def optimize_cmd(seeds, seed_file, pockets, pocket_row, generations,
                 mutants_per_parent, select_budget, seed, penalize, log_dir):
    """Refine seed molecules against a pocket under liability penalties."""
    if seed_file:
        if seeds:
            raise click.ClickException("give SMILES arguments or --seed-file, not both")
        seeds = [smiles for smiles, _ in load_library(seed_file)]
    if not seeds:
        raise click.ClickException("no seed molecules given")
    rows = load_pockets(pockets)
    if not 0 <= pocket_row < len(rows):
        raise click.ClickException(f"pocket-row must be in 0..{len(rows) - 1}")
    config = OptimizerConfig(generations=generations,
                             mutants_per_parent=mutants_per_parent,
                             select_budget=select_budget, seed=seed)
    penalties = categories_to_penalties(penalize) if penalize else None
    result = optimize(list(seeds), rows[pocket_row], penalties=penalties,
                      config=config, log_dir=log_dir)
    emit_json({
        "best": result.best.canonical,
        "objective": result.best.objective,
        "history": list(result.history),
        "top5": [{"smiles": c.canonical, "objective": c.objective}
                 for c in result.top5],
        "seed": result.seed,
    })


# ---------------------------------------------------------------- pbpk


@main.group()
def pbpk():
    """Whole-body kinetics: parameter derivation and simulation."""


def _admet_for(smiles, records):
    return predict_admet(smiles, source=records if records else "stub")


@pbpk.command("derive")
@click.argument("smiles")
@click.option("--records", type=click.Path(exists=True, dir_okay=False),
              help="measured-properties record file (default: surrogate model)")
@click.option("--bw", default=60.0, show_default=True, help="body weight kg")
@friendly
def pbpk_derive(smiles, records, bw):
    """Derive physiological simulation parameters for one molecule."""
    params = derive_params(_admet_for(smiles, records), bw=bw)
    emit_json(dataclasses.asdict(params))


@pbpk.command("simulate")
@click.argument("smiles")
@click.option("--records", type=click.Path(exists=True, dir_okay=False))
@click.option("--bw", default=60.0, show_default=True)
@click.option("--regimen", "regimen_file", type=click.Path(exists=True, dir_okay=False),
              help="key=value regimen file (overrides route/dose/times/duration)")
@click.option("--route", default="oral", show_default=True)
@click.option("--dose", default=200.0, show_default=True, help="dose mg")
@click.option("--times", default="0", show_default=True,
              help="comma-separated administration hours")
@click.option("--duration", type=float, help="infusion duration h")
@click.option("--horizon", default=24.0, show_default=True, help="hours simulated")
@click.option("--out", type=click.Path(dir_okay=False), help="write profile CSV")
@friendly
def pbpk_simulate(smiles, records, bw, regimen_file, route, dose, times,
                  duration, horizon, out):
    """Simulate a dosing regimen and print the summary metrics."""
    params = derive_params(_admet_for(smiles, records), bw=bw)
    if regimen_file:
        regimen = load_regimen(regimen_file)
    else:
        schedule = tuple(float(t) for t in times.split(",") if t.strip())
        regimen = DoseRegimen(route=route, dose=dose, schedule=schedule,
                              duration=duration)
    profile = simulate(params, regimen, horizon)
    if out:
        write_profile_csv(profile, out)
        click.echo(f"# profile written to {out}", err=True)
    emit_json(pk_metrics(profile))


# ---------------------------------------------------------------- pipeline


@main.group()
def pipeline():
    """Full multi-stage discovery runs."""


@pipeline.command("run")
@click.option("--task", help="discovery goal, e.g. a disease name")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
              help="request JSON file (overrides the other request flags)")
@click.option("--fixture", default="diabetes", show_default=True)
@click.option("--seed", type=int, help="run seed (default: fixture's)")
@click.option("--max-iterations", default=3, show_default=True)
@click.option("--interactive", "mode", flag_value="interactive",
              help="answer gates at the terminal")
@click.option("--script", "script_file", type=click.Path(exists=True, dir_okay=False),
              help="answer gates from a decision script JSON")
@click.option("--auto-approve", "mode", flag_value="auto",
              help="approve the target, never steer")
@click.option("--trace", "trace_file", type=click.Path(dir_okay=False),
              help="write the event trace as JSONL")
@click.option("--result", "result_file", type=click.Path(dir_okay=False),
              help="write the run result as JSON")
@friendly
def pipeline_run(task, config_file, fixture, seed, max_iterations, mode,
                 script_file, trace_file, result_file):
    """Run the discovery pipeline once and print the outcome."""
    if script_file and mode:
        raise click.ClickException("choose one of --interactive/--script/--auto-approve")
    if script_file:
        provider = load_script(script_file)
    elif mode == "interactive":
        provider = InteractiveProvider(print_fn=click.echo)
    elif mode == "auto":
        provider = AutoApproveProvider()
    else:
        raise click.ClickException("choose one of --interactive/--script/--auto-approve")

    if config_file:
        request = load_request(config_file)
    else:
        if not task:
            raise click.ClickException("--task is required without --config")
        request = PipelineRequest(task=task, fixture=fixture, seed=seed,
                                  max_iterations=max_iterations)

    result = run_pipeline(request, provider)

    if trace_file:
        write_trace_jsonl(result.trace, trace_file)
        click.echo(f"# trace written to {trace_file}", err=True)
    if result_file:
        write_result_json(result, result_file)
        click.echo(f"# result written to {result_file}", err=True)

    if result.success:
        click.echo(f"outcome: success in {result.iterations} iteration(s)")
        click.echo(f"target: {result.target}")
        click.echo(f"candidate: {result.smiles}")
    else:
        click.echo(f"outcome: failure ({result.failure_reason})")
        if result.target:
            click.echo(f"target: {result.target}")
    for i, verdict in enumerate(result.verdicts, start=1):
        cats = ",".join(verdict.categories) or "-"
        click.echo(f"iteration {i}: {verdict.decision} [{cats}]")


# ---------------------------------------------------------------- serve


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Start the local HTTP API for the companion UI."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
