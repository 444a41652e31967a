"""Command-line interface: every pipeline stage behind one binary.

Exit codes: 0 success, 1 property-check failure (witnesses reported),
2 input or usage error.
"""

import argparse
import json
import sys
from fractions import Fraction

from .atlas import AtlasError, enumerate_atlas
from .cotangent import (CotangentError, characteristic_image,
                        obstruction_class, t1_degree_families, t1_invariant)
from .deform import DeformError, first_order, lift, verify_family
from .gradings import (add_frozen_for_positivity, find_positive_grading,
                       find_strictly_positive, m_grading, rank_flags,
                       t_degrees)
from .groebner import GroebnerError, groebner_cone
from .polynomials import Poly
from .properties import (PropertyError, check_t0, check_t0_star, check_t1,
                         repair_t1, semigroup_data)
from .seeds import load_seed, seed_to_dict
from .simplicial import cluster_complex, sr_ideal
from .universal import UniversalError, build_universal, fiber_at_zero


PIPELINE_ERRORS = (AtlasError, CotangentError, DeformError, GroebnerError,
                   PropertyError, UniversalError, ValueError)


def _monomial_str(names, exponents):
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e != 0:
            factors.append("%s^%d" % (name, e))
    return "*".join(factors) if factors else "1"


def _poly_lines(poly, names):
    return poly.to_string(names)


def _laurent_parts(poly):
    """Split a Laurent polynomial into (numerator Poly, denominator exps)."""
    n = poly.nvars
    denom = [max(0, -min((e[i] for e in poly.terms), default=0))
             for i in range(n)]
    num = poly.scale_monomial(denom)
    return num, tuple(denom)


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _load(args):
    return load_seed(args.seed)


def cmd_enumerate(args):
    seed = _load(args)
    atlas = enumerate_atlas(seed, max_seeds=args.max_seeds)
    names = list(seed.var_ids)
    variables = []
    for var in atlas.variables.values():
        num, den = _laurent_parts(var.laurent)
        variables.append({
            "id": var.id, "g_vector": list(var.g_vector),
            "frozen": var.is_frozen,
            "numerator": _poly_lines(num, names),
            "denominator": _monomial_str(names, den)})
    clusters = [list(c) for c in atlas.clusters]
    pairs = []
    for ep in sorted(atlas.exchange_pairs.values(),
                     key=lambda p: tuple(sorted(p.pair))):
        pairs.append({"pair": sorted(ep.pair),
                      "sides": [[[v, e] for v, e in side]
                                for side in ep.monomials]})
    payload = {"variables": variables, "clusters": clusters,
               "exchange_pairs": pairs}
    lines = ["variables: %d (%d mutable)" % (
        len(variables), len(atlas.mutable_variables))]
    for v in variables:
        lines.append("  %s  g=%s  %s / %s" % (
            v["id"], tuple(v["g_vector"]), v["numerator"], v["denominator"]))
    lines.append("clusters: %d" % len(clusters))
    for c in clusters:
        lines.append("  " + " ".join(c))
    lines.append("exchange pairs: %d" % len(pairs))
    for p in pairs:
        sides = " + ".join(
            _monomial_str([v for v, _ in s], [e for _, e in s])
            for s in p["sides"])
        lines.append("  %s * %s = %s" % (p["pair"][0], p["pair"][1], sides))
    _emit(args, payload, lines)
    return 0


def cmd_complex(args):
    seed = _load(args)
    atlas = enumerate_atlas(seed, max_seeds=args.max_seeds)
    K = cluster_complex(atlas)
    payload = {"vertices": K.vertices,
               "facets": [sorted(f) for f in K.facets]}
    lines = ["vertices: " + " ".join(K.vertices)]
    lines += ["facet: " + " ".join(sorted(f)) for f in K.facets]
    _emit(args, payload, lines)
    return 0


def cmd_sr_ideal(args):
    seed = _load(args)
    atlas = enumerate_atlas(seed, max_seeds=args.max_seeds)
    K = cluster_complex(atlas)
    J = sr_ideal(K, atlas.frozen_ids)
    payload = {"variables": J.variables,
               "generators": [list(g) for g in J.generators]}
    lines = ["variables: " + " ".join(J.variables)]
    lines += ["gen: " + _monomial_str(J.variables, g) for g in J.generators]
    _emit(args, payload, lines)
    return 0


def cmd_grading(args):
    seed = _load(args)
    if args.add_frozen:
        augmented = add_frozen_for_positivity(seed, max_seeds=args.max_seeds)
        payload = seed_to_dict(augmented)
        _emit(args, payload, [json.dumps(payload)])
        return 0
    atlas = enumerate_atlas(seed, max_seeds=args.max_seeds)
    grading = m_grading(seed.matrix, atlas)
    payload = {"free_rank": grading.free_rank, "torsion": grading.torsion,
               "rank_flags": rank_flags(seed.matrix),
               "degrees": {v: [list(grading.deg_H[v][0]),
                               list(grading.deg_H[v][1])]
                           for v in sorted(grading.deg_H)}}
    lines = ["free rank: %d  torsion: %s" % (grading.free_rank,
                                             grading.torsion)]
    for v in sorted(grading.deg_H):
        free, tors = grading.deg_H[v]
        lines.append("  deg %s = %s%s" % (v, free,
                                          " mod %s" % (tors,) if tors else ""))
    if args.find_positive:
        payload["positive_grading"] = find_positive_grading(atlas)
        payload["strictly_positive_grading"] = find_strictly_positive(atlas)
        lines.append("positive grading: %s" % payload["positive_grading"])
        lines.append("strictly positive grading: %s"
                     % payload["strictly_positive_grading"])
    _emit(args, payload, lines)
    return 0


def _relation_payload(univ):
    out = []
    for rel in univ.univ_relations:
        sides = []
        for t_part, z_part in rel["sides"]:
            sides.append({"t": dict(sorted(t_part.items())),
                          "z": dict(sorted(z_part.items()))})
        out.append({"pair": sorted(rel["pair"]), "sides": sides})
    return out


def _relation_line(rel):
    parts = []
    for side in rel["sides"]:
        factors = [("%s^%d" % (v, e)) if e != 1 else v
                   for v, e in sorted(side["t"].items())]
        factors += [("%s^%d" % (v, e)) if e != 1 else v
                    for v, e in sorted(side["z"].items())]
        parts.append("*".join(factors) if factors else "1")
    return "%s * %s = %s" % (rel["pair"][0], rel["pair"][1],
                             " + ".join(parts))


def cmd_univ(args):
    seed = _load(args)
    univ = build_universal(seed, max_seeds=args.max_seeds)
    atlas = univ.base_atlas
    J = sr_ideal(cluster_complex(atlas), atlas.frozen_ids)
    degs = t_degrees(univ)
    fiber = fiber_at_zero(univ, J)
    payload = {"u_rows": univ.u_rows, "t_ids": univ.t_ids,
               "relations": _relation_payload(univ),
               "t_degrees": {t: list(degs[t]) for t in univ.t_ids},
               "variable_order": univ.variable_order,
               "fiber_at_zero": fiber["verdict"]}
    lines = ["coefficients: %d" % univ.p]
    for t, row in zip(univ.t_ids, univ.u_rows):
        lines.append("  %s  row %s  deg_T %s" % (t, row, degs[t]))
    lines.append("relations: %d" % len(univ.univ_relations))
    lines += ["  " + _relation_line(r) for r in payload["relations"]]
    lines.append("fiber at zero in the monomial ideal: %s" % fiber["verdict"])
    _emit(args, payload, lines)
    return 0


def cmd_t1(args):
    seed = _load(args)
    atlas = enumerate_atlas(seed, max_seeds=args.max_seeds)
    K = cluster_complex(atlas)
    J = sr_ideal(K, atlas.frozen_ids)
    want_families = args.families or not args.invariant
    want_invariant = args.invariant or not args.families
    payload = {}
    lines = []
    if want_families:
        fams = t1_degree_families(atlas, K)
        payload["families"] = [{"pair": sorted(d.pair),
                                "omega": sorted(d.omega)} for d in fams]
        lines.append("degree families: %d" % len(fams))
        lines += ["  pair {%s}  omega {%s}" % (
            ", ".join(f["pair"]), ", ".join(f["omega"]))
            for f in payload["families"]]
    if want_invariant:
        D = find_strictly_positive(atlas)
        pinned = t1_invariant(atlas, K, J, D)
        payload["pinned"] = [{"pair": sorted(d.pair),
                              "a": dict(sorted(d.a.items())),
                              "b": dict(sorted(d.b.items())),
                              "witness": d.witness_w} for d in pinned]
        lines.append("pinned degrees: %d" % len(pinned))
        lines += ["  pair {%s}  a=%s  w=%s" % (
            ", ".join(p["pair"]), p["a"], p["witness"])
            for p in payload["pinned"]]
    _emit(args, payload, lines)
    return 0


def cmd_check(args):
    seed = _load(args)
    atlas = enumerate_atlas(seed, max_seeds=args.max_seeds)
    D = find_strictly_positive(atlas)
    if args.property == "t1":
        report = check_t1(atlas, D)
    else:
        K = cluster_complex(atlas)
        J = sr_ideal(K, atlas.frozen_ids)
        if args.property == "t0":
            grading = m_grading(seed.matrix, atlas)
            report = check_t0(K, J, grading, atlas, D)
        else:
            univ = build_universal(seed, max_seeds=args.max_seeds)
            sg = semigroup_data(univ)
            report = check_t0_star(K, J, univ, sg, D)
    payload = {"property": report.property, "holds": report.holds,
               "witnesses": report.witnesses}
    lines = ["%s holds: %s" % (report.property, report.holds)]
    lines += ["  witness: %s" % w for w in report.witnesses]
    if args.repair and not report.holds:
        if args.property != "t1":
            raise PropertyError("--repair only applies to --property t1")
        repaired = repair_t1(seed, max_seeds=args.max_seeds)
        payload["repaired_seed"] = seed_to_dict(repaired)
        lines.append("repaired seed: %s" % json.dumps(payload["repaired_seed"]))
        _emit(args, payload, lines)
        return 0
    _emit(args, payload, lines)
    return 0 if report.holds else 1


def cmd_cone(args):
    seed = _load(args)
    univ = build_universal(seed, max_seeds=args.max_seeds)
    gc = groebner_cone(univ)
    payload = {"ambient": univ.variable_order,
               "lineality": gc.cone.lineality,
               "rays": [list(r) for r in gc.cone.rays],
               "dual_generators": [list(g) for g in gc.dual_generators],
               "simplicial_mod_lineality": gc.simplicial_mod_lineality,
               "smooth_mod_lineality": gc.smooth_mod_lineality,
               "interior_weight": gc.interior_weight}
    lines = ["ambient order: " + " ".join(univ.variable_order)]
    lines += ["lineality: %s" % (row,) for row in gc.cone.lineality]
    lines += ["ray: %s" % (r,) for r in gc.cone.rays]
    lines.append("simplicial mod lineality: %s" % gc.simplicial_mod_lineality)
    lines.append("smooth mod lineality: %s" % gc.smooth_mod_lineality)
    lines.append("interior weight: %s" % (gc.interior_weight,))
    _emit(args, payload, lines)
    return 0


def family_payload(family):
    """Generators in stable order with terms sorted by the monomial order."""
    names = family.z_vars + family.t_vars
    gens = []
    for g in family.generators:
        terms = sorted(g.items(), key=lambda item: family.order_key(item[0]),
                       reverse=True)
        gens.append([{"coeff": str(Fraction(c)), "exponents": list(e)}
                     for e, c in terms])
    return {"variables": names, "weights": family.weights,
            "order": family.order, "generators": gens}


def family_lines(family):
    names = family.z_vars + family.t_vars
    out = []
    for g in family.generators:
        terms = sorted(g.items(), key=lambda item: family.order_key(item[0]),
                       reverse=True)
        parts = []
        for e, c in terms:
            mon = _monomial_str(names, e)
            if c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append("%s*%s" % (c, mon))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        out.append(text)
    return out


def cmd_lift(args):
    seed = _load(args)
    univ = build_universal(seed, max_seeds=args.max_seeds)
    atlas = univ.base_atlas
    J = sr_ideal(cluster_complex(atlas), atlas.frozen_ids)
    family = first_order(univ, J)
    family = lift(family, max_order=args.max_order)
    payload = family_payload(family)
    lines = ["generators: %d  (order %d)" % (len(family.generators),
                                             family.order)]
    lines += ["  " + line for line in family_lines(family)]
    code = 0
    if args.verify:
        report = verify_family(family)
        payload["verify"] = report
        lines += ["verify %s: %s" % (k, v) for k, v in sorted(report.items())]
        if not all(report.values()):
            code = 1
    _emit(args, payload, lines)
    return code


def _data_path(name):
    from importlib.resources import files
    return str(files("clusterdeform.data").joinpath(name + ".json"))


def cmd_demo(args):
    for name in ("a2", "g2"):
        print("== %s ==" % name)
        seed = load_seed(_data_path(name))
        atlas = enumerate_atlas(seed, max_seeds=args.max_seeds)
        K = cluster_complex(atlas)
        J = sr_ideal(K, atlas.frozen_ids)
        print("variables: %d mutable, %d frozen; ideal generators: %d"
              % (len(atlas.mutable_variables), len(atlas.frozen_ids),
                 len(J.generators)))
        univ = build_universal(seed, max_seeds=args.max_seeds)
        gc = groebner_cone(univ)
        print("coefficients: %d; cone rays: %d, lineality: %d, smooth: %s"
              % (univ.p, len(gc.cone.rays), gc.cone.lineality_dim,
                 gc.smooth_mod_lineality))
        print("obstruction class: %s"
              % obstruction_class(seed.matrix)["reason"])
        family = lift(first_order(univ, J), max_order=args.max_order)
        print("lifted family (%d generators):" % len(family.generators))
        for line in family_lines(family):
            print("  " + line)
        report = verify_family(family)
        print("verified: %s" % all(report.values()))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON instead of text")
    common.add_argument("--max-seeds", type=int, default=100000,
                        help="enumeration budget (default 100000)")
    common.add_argument("--max-order", type=int, default=16,
                        help="lifting order budget (default 16)")
    common.add_argument("--threads", type=int, default=1,
                        help="reserved; all kernels run single-threaded")

    parser = argparse.ArgumentParser(
        prog="cluster-deform",
        description="Exact cluster-algebra enumeration, property checks, "
                    "and deformation lifting.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, with_seed=True, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        if with_seed:
            p.add_argument("seed", help="seed JSON file")
        p.set_defaults(fn=fn)
        return p

    add("enumerate", cmd_enumerate,
        help="cluster variables, clusters, exchange pairs")
    add("complex", cmd_complex, help="cluster complex vertices and facets")
    add("sr-ideal", cmd_sr_ideal, help="Stanley-Reisner ideal generators")
    g = add("grading", cmd_grading, help="fine grading and positivity")
    g.add_argument("--find-positive", action="store_true")
    g.add_argument("--add-frozen", action="store_true")
    add("univ", cmd_univ, help="universal coefficient extension")
    t = add("t1", cmd_t1, help="graded deformation degrees")
    t.add_argument("--invariant", action="store_true")
    t.add_argument("--families", action="store_true")
    c = add("check", cmd_check, help="decision procedures")
    c.add_argument("--property", required=True,
                   choices=["t0", "t0star", "t1"])
    c.add_argument("--repair", action="store_true")
    add("cone", cmd_cone, help="weight cone with certificates")
    lf = add("lift", cmd_lift, help="flat family over the coefficients")
    lf.add_argument("--verify", action="store_true")
    add("demo", cmd_demo, with_seed=False,
        help="run the bundled showcase examples end to end")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; preserve both
        return exc.code
    try:
        return args.fn(args)
    except (OSError, json.JSONDecodeError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except PIPELINE_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
