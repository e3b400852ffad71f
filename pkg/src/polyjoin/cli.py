"""Command-line entry point.

Complexes are given as JSON files, ``-`` for stdin, or a shorthand
``boundary:n``, ``simplex:n``, ``empty:n`` ({emptyset} on [n]) or ``void:n``.
Results go to stdout as JSON (or CSV where a table makes sense); errors go
to stderr as JSON with a distinct exit code per error kind.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import limits
from .chains import simplicial_homology
from .complex import (GroundSet, SimplicialComplex, SimplicialPair, build, compose, dual, join, link,
                      polyhedral_join, restrict_masks)
from .duality import SpherePairSpec, arrangement_complement, pairing_rows, sphere_pair_betti
from .errors import InvalidInputError, PolyjoinError
from .hochster import character_ranks, sigma_omega_table, split_status
from .linalg import RingSpec
from .random_gen import gen_random
from .serialize import (complex_from_json, complex_to_json, loads, pair_from_json, pair_to_json, rows_to_csv,
                        set_label, table_rows)
from .verify import RUNNERS, run_check

EXIT_OK, EXIT_COUNTEREXAMPLE = 0, 1
TABLE_COLUMNS = ["sigma", "omega", "degree", "rank", "torsion"]
SHORTHANDS = {"boundary": "boundary", "simplex": "simplex", "empty": "empty", "void": "void"}


def _read(ref: str) -> object:
    if ref == "-":
        return loads(sys.stdin.read())
    path = Path(ref)
    if not path.is_file():
        raise InvalidInputError(f"no such file: {ref}")
    return loads(path.read_text())


def load_complex(ref: str) -> SimplicialComplex:
    kind, sep, size = ref.partition(":")
    if sep and kind in SHORTHANDS:
        try:
            n = int(size)
        except ValueError:
            raise InvalidInputError(f"bad size in {ref!r}") from None
        if n < 0:
            raise InvalidInputError("sizes must be nonnegative")
        return build(SHORTHANDS[kind], GroundSet.range(n))
    return complex_from_json(_read(ref))


def load_pairs(refs: list[str]) -> list[SimplicialPair]:
    out = []
    for ref in refs:
        data = _read(ref)
        out.extend(pair_from_json(d) for d in (data if isinstance(data, list) else [data]))
    return out


def _vertices(text: str | None, K: SimplicialComplex) -> int:
    """Comma-separated vertex ids (as they appear in the universe) to a mask."""
    if not text:
        return 0
    lookup = {str(v): v for v in K.ground.universe}
    try:
        return K.ground.mask(lookup[t.strip()] for t in text.split(",") if t.strip())
    except KeyError as e:
        raise InvalidInputError(f"vertex {e.args[0]} is not in the ground set") from None


def _emit(args, payload, rows=None, columns=None) -> None:
    if args.out == "csv" and rows is not None:
        sys.stdout.write(rows_to_csv(rows, columns))
    else:
        sys.stdout.write(json.dumps(payload, indent=2 if args.pretty else None) + "\n")


# -- subcommands ------------------------------------------------------------------

def cmd_dual(args) -> int:
    _emit(args, complex_to_json(dual(load_complex(args.complex))))
    return EXIT_OK


def cmd_link(args) -> int:
    K = load_complex(args.complex)
    _emit(args, complex_to_json(link(K, K.ground.vertices(_vertices(args.sigma, K)))))
    return EXIT_OK


def cmd_restrict(args) -> int:
    K = load_complex(args.complex)
    s, w = _vertices(args.sigma, K), _vertices(args.omega, K)
    if s & w:
        raise InvalidInputError("sigma and omega must be disjoint")
    R = SimplicialComplex(K.ground.sub(w), restrict_masks(K, s, w), check=False)
    _emit(args, complex_to_json(R))
    return EXIT_OK


def cmd_join(args) -> int:
    _emit(args, complex_to_json(join([load_complex(r) for r in args.complexes])))
    return EXIT_OK


def cmd_polyjoin(args) -> int:
    _emit(args, complex_to_json(polyhedral_join(load_complex(args.k), load_pairs(args.pairs))))
    return EXIT_OK


def cmd_compose(args) -> int:
    _emit(args, complex_to_json(compose(load_complex(args.k), [load_complex(r) for r in args.ls])))
    return EXIT_OK


def cmd_homology(args) -> int:
    K = load_complex(args.complex)
    ring = RingSpec.parse(args.ring)
    h = simplicial_homology(K, ring, reduced=not args.unreduced)
    _emit(args, {"ring": str(ring), "reduced": not args.unreduced, **h.to_json()},
          [{"sigma": "", "omega": "", "degree": d, "rank": h[d],
            "torsion": " ".join(map(str, h.torsion.get(d, ())))} for d in h.degrees()], TABLE_COLUMNS)
    return EXIT_OK


def cmd_table(args) -> int:
    K = load_complex(args.complex)
    t = sigma_omega_table(K, RingSpec.parse(args.ring), args.family)
    _emit(args, t.to_json(), table_rows(t), TABLE_COLUMNS)
    return EXIT_OK


def cmd_character(args) -> int:
    (pair,) = load_pairs([args.pair])
    ring = RingSpec.parse(args.ring)
    c = character_ranks(pair, ring, reduced=not args.unreduced)
    _emit(args, {"ring": str(ring), "reduced": not args.unreduced, **c.to_json()})
    return EXIT_OK


def cmd_split(args) -> int:
    (pair,) = load_pairs([args.pair])
    if args.total:
        st = split_status(pair, "total", args.family)
        payload = {"mode": "total", "family": args.family, "all_split": all(st.values()),
                   "entries": [{"sigma": set_label(p.sigma), "omega": set_label(p.omega), **s.to_json()}
                               for p, s in st.items()]}
    else:
        payload = {"mode": "plain", **split_status(pair).to_json()}
    _emit(args, payload)
    return EXIT_OK


def _verify_options(args) -> dict:
    opts = {"max_m": args.max_m, "max_n": args.max_n, "max_nk": args.max_nk, "family": args.family}
    if args.rings:
        opts["rings"] = tuple(r.strip() for r in args.rings.split(",") if r.strip())
        for r in opts["rings"]:
            RingSpec.parse(r)
    if args.ring:
        opts["ring"] = str(RingSpec.parse(args.ring))
    if args.complex:
        opts["complex"] = load_complex(args.complex)
    if args.spec:
        opts["spec"] = SpherePairSpec.parse(args.spec)
    return opts


def cmd_verify(args) -> int:
    v = run_check(args.id, seed=args.seed, trials=args.trials, **_verify_options(args))
    _emit(args, v.to_dict())
    return EXIT_OK if v.passed else EXIT_COUNTEREXAMPLE


def cmd_betti_spherepair(args) -> int:
    K = load_complex(args.complex)
    spec = SpherePairSpec.parse(args.spec)
    M, Mc = sphere_pair_betti(K, spec, args.ring or "Q")
    rows = pairing_rows(M, Mc, spec.r)
    payload = {"spec": spec.to_json(), "r": spec.r, "M": M.to_json(), "Mc": Mc.to_json(), "pairing": rows}
    _emit(args, payload, rows, list(rows[0]) if rows else ["degree"])
    return EXIT_OK


def cmd_arrangement(args) -> int:
    K = load_complex(args.complex)
    out = arrangement_complement(K, args.field, args.ring or "Q", oracle=not args.no_oracle)
    _emit(args, out)
    return EXIT_OK if out.get("agrees", True) else EXIT_COUNTEREXAMPLE


def cmd_gen_random(args) -> int:
    blocks = [int(x) for x in args.blocks.split(",")] if args.blocks else None
    res = gen_random(args.seed, args.n, args.density, blocks)
    if blocks is None:
        payload = complex_to_json(res)
    else:
        K, pairs = res
        payload = {"K": complex_to_json(K), "pairs": [pair_to_json(p) for p in pairs]}
    _emit(args, payload)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=["json", "csv"], default="json")
    common.add_argument("--max-faces", type=int, default=None, help="face cap (default 1e5 or $POLYJOIN_MAX_FACES)")
    common.add_argument("--pretty", action="store_true", help="indent JSON output")

    p = argparse.ArgumentParser(prog="polyjoin", description="Polyhedral joins, duals and their homology.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("dual", cmd_dual, "dual complex relative to the ground set")
    sp.add_argument("complex", nargs="?", default="-")
    sp = add("link", cmd_link, "link of a face")
    sp.add_argument("complex", nargs="?", default="-")
    sp.add_argument("--sigma", default="")
    sp = add("restrict", cmd_restrict, "restricted link K_{sigma,omega}")
    sp.add_argument("complex", nargs="?", default="-")
    sp.add_argument("--sigma", default="")
    sp.add_argument("--omega", default="")
    sp = add("join", cmd_join, "join of complexes")
    sp.add_argument("complexes", nargs="+")
    sp = add("polyjoin", cmd_polyjoin, "polyhedral join S(K; X, A)")
    sp.add_argument("--k", required=True)
    sp.add_argument("--pairs", nargs="+", required=True, help="pair files ({total, sub} or a list of them)")
    sp = add("compose", cmd_compose, "composition complex S(K; L_1, ..., L_m)")
    sp.add_argument("--k", required=True)
    sp.add_argument("--ls", nargs="+", required=True)

    for name, fn, help_ in [("homology", cmd_homology, "simplicial homology"),
                            ("table", cmd_table, "sigma-omega homology table")]:
        sp = add(name, fn, help_)
        sp.add_argument("complex", nargs="?", default="-")
        sp.add_argument("--ring", default="Q")
        if name == "homology":
            sp.add_argument("--unreduced", action="store_true")
        else:
            sp.add_argument("--family", choices=["X", "R"], default="X")

    sp = add("character", cmd_character, "coker/ker/im ranks of H(A) -> H(X)")
    sp.add_argument("pair", nargs="?", default="-")
    sp.add_argument("--ring", default="Q")
    sp.add_argument("--unreduced", action="store_true")
    sp = add("split", cmd_split, "whether H(A) -> H(X) splits over Z")
    sp.add_argument("pair", nargs="?", default="-")
    sp.add_argument("--total", action="store_true", help="check every (sigma, omega) restriction")
    sp.add_argument("--family", choices=["X", "R"], default="X")

    sp = add("verify", cmd_verify, "seeded batch verification")
    sp.add_argument("id", choices=sorted(RUNNERS))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--max-m", type=int, default=None)
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--max-nk", type=int, default=None)
    sp.add_argument("--rings", default=None, help="comma-separated, e.g. Q,F2,F3")
    sp.add_argument("--ring", default=None)
    sp.add_argument("--family", choices=["X", "R"], default=None)
    sp.add_argument("--complex", default=None, help="check one given complex instead of random ones")
    sp.add_argument("--spec", default=None, help="sphere-pair spec 'r,q;r,q;...' (thm5.6)")

    sp = add("betti-spherepair", cmd_betti_spherepair, "Betti ranks of sphere-pair products and complements")
    sp.add_argument("complex", nargs="?", default="-")
    sp.add_argument("--spec", required=True, help="'r,q;r,q;...', one entry per vertex")
    sp.add_argument("--ring", default=None)
    sp = add("arrangement", cmd_arrangement, "Betti ranks of a coordinate subspace arrangement complement")
    sp.add_argument("complex", nargs="?", default="-")
    sp.add_argument("--field", choices=["R", "C"], default="R")
    sp.add_argument("--ring", default=None)
    sp.add_argument("--no-oracle", action="store_true")

    sp = add("gen-random", cmd_gen_random, "seeded random complex (and pairs)")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--density", type=float, default=0.5)
    sp.add_argument("--blocks", default=None, help="comma-separated block sizes; also emits one pair per block")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        limits.set_max_faces(args.max_faces)
        return args.func(args)
    except PolyjoinError as e:
        sys.stderr.write(json.dumps(e.to_dict()) + "\n")
        return e.exit_code
    finally:
        limits.set_max_faces(None)


if __name__ == "__main__":
    sys.exit(main())
