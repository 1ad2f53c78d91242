"""Command-line front end.

Every command builds a JSON-ready report. ``--json`` prints it verbatim;
the default text mode prints a headline followed by the same payload
flattened to ``key: value`` lines. Exit codes: 0 equivalent / success,
1 not equivalent (or disagreements found), 2 error.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field

import click

from . import __version__
from .burnside import basis_to_dict, burnside_basis, stable_inclusion_equal
from .catalog import CatalogEntry, builtin_catalog, load_catalog
from .classify import alternative_classification, condition2_bounded, distinguishing_search, stable_equivalent_mp
from .errors import FusionClassError, UnknownGroup
from .fusion import build_fusion_system, fusion_to_dict
from .groups import FiniteGroup, all_subgroups, homomorphisms, is_prime, subgroup_conjugacy_classes, sylow_subgroup
from .repmod import linearize, rep_set, rep_to_dict
from .settings import Settings, use_settings


class Exit(Exception):
    def __init__(self, code: int):
        self.code = code


@dataclass
class Session:
    settings: Settings
    json_out: bool
    timing: bool
    catalog: dict[str, CatalogEntry] = field(default_factory=dict)

    def group(self, name: str) -> FiniteGroup:
        try:
            return self.catalog[name].group
        except KeyError:
            raise UnknownGroup(f"unknown group {name!r}") from None


def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and obj:
        for k, v in sorted(obj.items()):
            yield from _flatten(v, f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list) and any(isinstance(v, dict) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def emit(session: Session, command: list[str], inputs: dict, result: dict,
         headline: str, code: int, started: float):
    report = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "settings": session.settings.as_dict(),
    }
    if session.timing:
        report["timing_seconds"] = round(time.perf_counter() - started, 6)
    if session.json_out:
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    else:
        click.echo(headline)
        for key, value in _flatten(report):
            click.echo(f"  {key}: {json.dumps(value, sort_keys=True)}")
    raise Exit(code)


def _verdict_headline(equivalent: bool) -> tuple[str, int]:
    return ("EQUIVALENT", 0) if equivalent else ("NOT EQUIVALENT", 1)


def _check_prime(p: int):
    if not is_prime(p):
        raise click.BadParameter(f"{p} is not prime", param_hint="-p")


@click.group()
@click.version_option(__version__)
@click.option("--json", "json_out", is_flag=True, help="Emit the full JSON report.")
@click.option("--catalog", "catalog_file", type=click.Path(exists=True, dir_okay=False),
              help="Extra catalog file; its names must not clash with built-in groups.")
@click.option("--max-order", type=int, default=Settings.max_order, show_default=True)
@click.option("--max-subgroup-ambient", type=int, default=Settings.max_subgroup_ambient, show_default=True)
@click.option("--max-hom-source", type=int, default=Settings.max_hom_source, show_default=True)
@click.option("--max-biset", type=int, default=Settings.max_biset, show_default=True)
@click.option("--seed", type=int, default=Settings.seed, show_default=True,
              help="Seed for the randomized intertwiner search.")
@click.option("--timing", is_flag=True, help="Include wall-clock timing in the report.")
@click.pass_context
def cli(ctx, json_out, catalog_file, max_order, max_subgroup_ambient, max_hom_source,
        max_biset, seed, timing):
    """Fusion systems, Burnside modules and stable classifications of finite groups."""
    settings = Settings(max_order, max_subgroup_ambient, max_hom_source, max_biset, seed)
    ctx.obj = Session(settings, json_out, timing)
    ctx.with_resource(use_settings(settings))
    catalog = dict(builtin_catalog())
    if catalog_file:
        extra = load_catalog(catalog_file)
        clash = sorted(set(extra) & set(catalog))
        if clash:
            raise FusionClassError(f"catalog names clash with built-in groups: {clash}")
        catalog.update(extra)
    ctx.obj.catalog = catalog


# group ---------------------------------------------------------------------

@cli.group()
def group():
    """Inspect the group catalog."""


@group.command("list")
@click.pass_obj
def group_list(s: Session):
    """List the catalog with orders."""
    t0 = time.perf_counter()
    rows = [{"name": e.name, "order": e.group.order, "degree": e.group.degree, "source": e.source}
            for e in s.catalog.values()]
    emit(s, ["group", "list"], {}, {"groups": rows}, f"{len(rows)} groups", 0, t0)


@group.command("show")
@click.argument("name")
@click.pass_obj
def group_show(s: Session, name):
    """Order, generators and subgroup class counts of one group."""
    t0 = time.perf_counter()
    G = s.group(name)
    classes = subgroup_conjugacy_classes(G)
    result = {
        "name": G.name,
        "order": G.order,
        "degree": G.degree,
        "generators": [g.cycles() for g in G.generators],
        "subgroup_count": len(all_subgroups(G)),
        "subgroup_class_count": len(classes),
        "subgroup_class_orders": [R.order for R, _ in classes],
    }
    emit(s, ["group", "show", name], {"name": name}, result,
         f"{G.name}: order {G.order}, {len(classes)} subgroup classes", 0, t0)


# fusion --------------------------------------------------------------------

@cli.group()
def fusion():
    """Fusion systems F_S(G)."""


@fusion.command("table")
@click.argument("name")
@click.option("-p", "--prime", "p", type=int, required=True)
@click.pass_obj
def fusion_table(s: Session, name, p):
    """Dump F_S(G): objects, then morphism tables per pair."""
    t0 = time.perf_counter()
    _check_prime(p)
    F = build_fusion_system(s.group(name), p)
    result = fusion_to_dict(F)
    emit(s, ["fusion", "table", name, "-p", str(p)], {"group": name, "prime": p}, result,
         f"F_S({name}) at p={p}: {len(F.objects)} objects, {F.morphism_count()} morphisms", 0, t0)


@fusion.command("compare")
@click.argument("name1")
@click.argument("name2")
@click.option("-p", "--prime", "p", type=int, required=True)
@click.pass_obj
def fusion_compare(s: Session, name1, name2, p):
    """Search for an isomorphism of fusion systems."""
    t0 = time.perf_counter()
    _check_prime(p)
    v = alternative_classification(s.group(name1), s.group(name2), p)
    head, code = _verdict_headline(v.equivalent)
    emit(s, ["fusion", "compare", name1, name2, "-p", str(p)],
         {"groups": [name1, name2], "prime": p}, v.to_dict(), head, code, t0)


# burnside ------------------------------------------------------------------

@cli.group()
def burnside():
    """Burnside modules A(G, G')."""


@burnside.command("basis")
@click.argument("name1")
@click.argument("name2")
@click.pass_obj
def burnside_basis_cmd(s: Session, name1, name2):
    """Canonical basis of A(G, G') with trivial flags."""
    t0 = time.perf_counter()
    B = burnside_basis(s.group(name1), s.group(name2))
    emit(s, ["burnside", "basis", name1, name2], {"groups": [name1, name2]}, basis_to_dict(B),
         f"A({name1},{name2}): {B.rank} classes, reduced rank {B.reduced_rank}", 0, t0)


@burnside.command("check-prop")
@click.argument("name")
@click.option("-p", "--prime", "p", type=int, required=True)
@click.pass_obj
def burnside_check_prop(s: Session, name, p):
    """Compare the Burnside criterion with fusion membership for every (P, Q, phi)."""
    t0 = time.perf_counter()
    _check_prime(p)
    G = s.group(name)
    result = check_prop(G, p)
    code = 0 if result["disagreements"] == 0 else 1
    emit(s, ["burnside", "check-prop", name, "-p", str(p)], {"group": name, "prime": p}, result,
         f"{result['triples_checked']} triples, {result['disagreements']} disagreements", code, t0)


def check_prop(G: FiniteGroup, p: int) -> dict:
    S = sylow_subgroup(G, p)
    F = build_fusion_system(G, p, base=S)
    checked = disagreements = in_fusion = 0
    for i, P in enumerate(F.objects):
        for j, Q in enumerate(F.objects):
            fus = F.hom_table[i, j]
            for phi in homomorphisms(P, Q):
                checked += 1
                member = phi.images in fus
                in_fusion += member
                if stable_inclusion_equal(G, S, P, Q, phi) != member:
                    disagreements += 1
    return {"triples_checked": checked, "fusion_triples": in_fusion,
            "disagreements": disagreements, "sylow_order": S.order}


# rep -----------------------------------------------------------------------

@cli.command("rep")
@click.argument("qname")
@click.argument("gname")
@click.option("--injective", is_flag=True, help="Restrict to injective homomorphisms.")
@click.option("-p", "--prime", "p", type=int, required=True)
@click.pass_obj
def rep_cmd(s: Session, qname, gname, injective, p):
    """Rep(Q, G) or InjRep(Q, G) as an Out(Q)-set."""
    t0 = time.perf_counter()
    _check_prime(p)
    X = rep_set(s.group(qname), s.group(gname), injective)
    linearize(X, p)
    kind = "InjRep" if injective else "Rep"
    emit(s, ["rep", qname, gname] + (["--injective"] if injective else []) + ["-p", str(p)],
         {"Q": qname, "G": gname, "injective": injective, "prime": p}, rep_to_dict(X, p),
         f"{kind}({qname},{gname}): {len(X)} classes", 0, t0)


# classify ------------------------------------------------------------------

@cli.group()
def classify():
    """Stable classification verdicts."""


@classify.command("stable")
@click.argument("name1")
@click.argument("name2")
@click.option("-p", "--prime", "p", type=int, required=True)
@click.pass_obj
def classify_stable(s: Session, name1, name2, p):
    """Martino-Priddy stable classification via InjRep (exact)."""
    t0 = time.perf_counter()
    _check_prime(p)
    v = stable_equivalent_mp(s.group(name1), s.group(name2), p)
    head, code = _verdict_headline(v.equivalent)
    emit(s, ["classify", "stable", name1, name2, "-p", str(p)],
         {"groups": [name1, name2], "prime": p}, v.to_dict(), head, code, t0)


@classify.command("fusion")
@click.argument("name1")
@click.argument("name2")
@click.option("-p", "--prime", "p", type=int, required=True)
@click.pass_obj
def classify_fusion(s: Session, name1, name2, p):
    """Classification by fusion-system isomorphism (exact)."""
    t0 = time.perf_counter()
    _check_prime(p)
    v = alternative_classification(s.group(name1), s.group(name2), p)
    head, code = _verdict_headline(v.equivalent)
    emit(s, ["classify", "fusion", name1, name2, "-p", str(p)],
         {"groups": [name1, name2], "prime": p}, v.to_dict(), head, code, t0)


@classify.command("condition2")
@click.argument("name1")
@click.argument("name2")
@click.option("-p", "--prime", "p", type=int, required=True)
@click.option("--bound", type=int, required=True, help="Largest |Q| to check (a power of p).")
@click.pass_obj
def classify_condition2(s: Session, name1, name2, p, bound):
    """Rep(Q, -) comparison over built-in p-groups up to a bound."""
    t0 = time.perf_counter()
    _check_prime(p)
    v = condition2_bounded(s.group(name1), s.group(name2), p, bound)
    head, code = _verdict_headline(v.equivalent)
    emit(s, ["classify", "condition2", name1, name2, "-p", str(p), "--bound", str(bound)],
         {"groups": [name1, name2], "prime": p, "bound": bound}, v.to_dict(), head, code, t0)


@classify.command("search")
@click.option("-p", "--prime", "p", type=int, required=True)
@click.option("--catalog", "catalog_file", type=click.Path(exists=True, dir_okay=False),
              help="Search this catalog file instead of the built-in catalog.")
@click.pass_obj
def classify_search(s: Session, p, catalog_file):
    """Pairs stably equivalent but with non-isomorphic fusion systems."""
    t0 = time.perf_counter()
    _check_prime(p)
    if catalog_file:
        groups = [e.group for e in load_catalog(catalog_file).values()]
    else:
        groups = [e.group for e in s.catalog.values()]
    pairs = distinguishing_search(groups, p)
    result = {"catalog": [g.name for g in groups], "pairs": [list(x) for x in pairs],
              "pairs_examined": len(groups) * (len(groups) - 1) // 2}
    cmd = ["classify", "search", "-p", str(p)] + (["--catalog", catalog_file] if catalog_file else [])
    emit(s, cmd, {"prime": p, "catalog_file": catalog_file}, result,
         f"search complete: {len(pairs)} distinguishing pairs", 0, t0)


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="fusionclass", standalone_mode=False)
    except Exit as e:
        return e.code
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 2
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 2
    except FusionClassError as e:
        click.echo(f"error: {type(e).__name__}: {e}", err=True)
        return 2
    return 0


def entry_point():
    sys.exit(main())
