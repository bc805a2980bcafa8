"""Command-line front end.

    conductors filtration --input inst.json [--tsv]
    conductors conductor  --input inst.json [--strict]
    conductors wd         --input inst.json [--strict]
    conductors examples   cyclotomic P N [--character K | --primitive]
    conductors examples   tame E [--character K]
    conductors examples   split-mult [--q Q]
    conductors verify     --sweep N --seed S

Exit status is 0 iff every verdict is AGREE, 1 on DISAGREE, 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import characters as ch
from . import examples as ex
from . import weildeligne as wdm
from .exactnum import format_rational
from .instances import (InstanceError, character_instance, dumps, filtration_instance,
                        parse_instance, wd_instance)
from .ramification import lower_to_upper, upper_breaks, upper_to_lower

EXIT_AGREE, EXIT_DISAGREE, EXIT_ERROR = 0, 1, 2


@dataclass
class Report:
    command: str
    values: dict[str, str] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    tsv: str = ""

    @property
    def agree(self) -> bool:
        return all(self.verdicts.values())

    def verdict_line(self) -> str:
        return "VERDICT: " + ("AGREE" if self.agree else "DISAGREE")

    def render(self) -> str:
        return "\n".join(self.lines + [self.verdict_line()]) + "\n"

    def to_json(self) -> str:
        doc = {"command": self.command, "values": self.values,
               "verdicts": {k: ("AGREE" if v else "DISAGREE") for k, v in self.verdicts.items()},
               "verdict": "AGREE" if self.agree else "DISAGREE",
               "provenance": self.provenance, "lines": self.lines}
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _q(x) -> str:
    if isinstance(x, Fraction) or isinstance(x, int):
        return format_rational(x)
    return str(x)


def _fmt_points(points) -> str:
    return " ".join(f"({_q(r)},{_q(s)})" for r, s in points)


class CommandError(Exception):
    pass


def _need_input(args):
    if not args.input:
        raise CommandError(f"{args.command}: --input PATH is required")
    return parse_instance(args.input)


def _strict(args, rg):
    if args.strict and not rg.realizable:
        raise CommandError("--strict refused: integrality is only a theorem for realizable "
                           "instances, and this instance is not flagged realizable")
    return True if args.strict else False


def cmd_filtration(args) -> Report:
    inst = _need_input(args)
    rg = inst.rg
    f, g = rg.phi(), rg.psi()
    rep = Report("filtration", provenance={"input": args.input})
    rep.tsv = "r\ts\n" + "".join(f"{_q(r)}\t{_q(s)}\n" for r, s in f.breakpoints)
    rep.values["lower_orders"] = " ".join(str(o) for o in rg.orders())
    rep.values["upper_breaks"] = " ".join(_q(s) for s in upper_breaks(rg))
    rep.values["phi_breakpoints"] = _fmt_points(f.breakpoints)
    rep.values["phi_slopes"] = " ".join(_q(s) for s in f.slopes)
    rep.values["psi_breakpoints"] = _fmt_points(g.breakpoints)
    rep.values["psi_slopes"] = " ".join(_q(s) for s in g.slopes)
    rep.lines = [f"group order: {rg.G.size}", f"realizable: {str(rg.realizable).lower()}"]
    rep.lines += [f"{k}: {v}" for k, v in rep.values.items()]
    cut_points = [x for x, _ in f.breakpoints] + [x + 1 for x, _ in f.breakpoints]
    rep.verdicts["psi_phi_roundtrip"] = all(g(f(x)) == x for x in cut_points)
    rep.verdicts["upper_lower_roundtrip"] = upper_to_lower(rg.G, lower_to_upper(rg)) == rg
    return rep


def conductor_rows(chi: ch.Character):
    a = ch.artin_conductor_sum(chi, strict=False)
    eps = ch.tame_part(chi)
    rows = {"artin_sum": (a, Fraction(eps), a - eps)}
    lo = ch.lower_integral_parts(chi)
    rows["lower_integral"] = (lo[0] + lo[1], lo[0], lo[1])
    up = ch.upper_integral_parts(chi)
    rows["upper_integral"] = (up[0] + up[1], up[0], up[1])
    pa = ch.inner_product(chi, ch.artin_class_function(chi.rg))
    ps = ch.inner_product(chi, ch.swan_class_function(chi.rg))
    rows["class_pairing"] = (pa, pa - ps, ps)
    return rows


def cmd_conductor(args) -> Report:
    inst = _need_input(args)
    if inst.character is None:
        raise CommandError("conductor: instance kind must be 'character'")
    chi = inst.character
    strict = _strict(args, inst.rg)
    rows = conductor_rows(chi)
    if strict:
        ch.artin_conductor_sum(chi, strict=True)
        ch.swan_part(chi, strict=True)
    rep = Report("conductor", provenance={"input": args.input, "strict": str(strict).lower()})
    rep.lines.append(f"{'formula':<16} {'a':>8} {'eps':>8} {'delta':>8}")
    for name, (a, e, d) in rows.items():
        rep.lines.append(f"{name:<16} {_q(a):>8} {_q(e):>8} {_q(d):>8}")
        rep.values[f"{name}.a"], rep.values[f"{name}.eps"], rep.values[f"{name}.delta"] = \
            _q(a), _q(e), _q(d)
    ref = rows["artin_sum"]
    rep.verdicts["three_formula"] = rows["lower_integral"] == ref and rows["upper_integral"] == ref
    rep.verdicts["class_pairing"] = rows["class_pairing"] == ref
    a, e, d = ref
    rep.lines.append(f"a={_q(a)} eps={_q(e)} delta={_q(d)}")
    return rep


def cmd_wd(args) -> Report:
    inst = _need_input(args)
    if inst.wd is None:
        raise CommandError("wd: instance kind must be 'wd'")
    wd = inst.wd
    strict = _strict(args, inst.rg)
    th = wdm.theorem_check(wd, strict=strict, raise_on_failure=False)
    tate = wdm.tate_424_check(wd, strict=False, raise_on_failure=False) if th.agree else None
    rep = Report("wd", provenance={"input": args.input, "strict": str(strict).lower()})
    for k, v in th.as_dict().items():
        rep.values[k] = _q(v)
    rep.lines.append(f"integral={_q(th.integral)} serre={_q(th.serre)} deligne={_q(th.deligne)}")
    rep.verdicts["theorem"] = th.agree
    if tate is not None:
        rep.values["tate_corrected"] = _q(tate.corrected)
        rep.values["tate_uncorrected"] = _q(tate.uncorrected)
        rep.lines.append(f"tate_424 corrected={_q(tate.corrected)} "
                         f"uncorrected={_q(tate.uncorrected)} "
                         f"(uncorrected {'holds' if tate.uncorrected_holds else 'fails'})")
        rep.verdicts["tate_424"] = tate.corrected_holds
    return rep


def cmd_examples(args) -> str:
    family, params = args.family, args.params
    group_doc = None
    try:
        if family == "cyclotomic":
            p, n = (int(x) for x in params)
            rg = ex.cyclotomic_extension(p, n)
            group_doc = {"preset": "units_mod", "param": p ** n}
        elif family == "tame":
            (e,) = (int(x) for x in params)
            rg = ex.tame_cyclic(e)
            group_doc = {"preset": "cyclic", "param": e}
        elif family == "split-mult":
            if params:
                raise ValueError
            return dumps(wd_instance(ex.split_multiplicative(args.q)))
        else:
            raise CommandError(f"examples: unknown family {family!r}; "
                               "allowed: cyclotomic, tame, split-mult")
    except ValueError as exc:
        raise CommandError(f"examples {family}: bad parameters {params} ({exc})") from exc
    if args.primitive:
        if family != "cyclotomic":
            raise CommandError("--primitive applies to cyclotomic instances only")
        prim = ex.primitive_characters(rg, p, n)
        if not prim:
            raise CommandError(f"no primitive character modulo {p}^{n}")
        return dumps(character_instance(prim[0], group_doc))
    if args.character is not None:
        lin = ch.linear_characters(rg)
        if not 0 <= args.character < len(lin):
            raise CommandError(f"--character must be in 0..{len(lin) - 1}")
        return dumps(character_instance(lin[args.character], group_doc))
    return dumps(filtration_instance(rg, group_doc))


def sweep(count: int, seed: int) -> dict[str, list[int]]:
    """Differential checks on random instances with seeds seed, seed+1, ..."""
    names = ("three_formula", "class_pairing", "theorem", "tate_424")
    tally = {k: [0, 0] for k in names + ("all",)}
    for i in range(count):
        rg, chi = ex.random_instance(seed + i)
        rows = conductor_rows(chi)
        ref = rows["artin_sum"]
        wd = ex.random_wd_instance(seed + i)
        th = wdm.theorem_check(wd, strict=False, raise_on_failure=False)
        tate_ok = wdm.tate_424_check(wd, strict=False, raise_on_failure=False).corrected_holds
        ok = {"three_formula": rows["lower_integral"] == ref == rows["upper_integral"],
              "class_pairing": rows["class_pairing"] == ref,
              "theorem": th.agree, "tate_424": tate_ok}
        ok["all"] = all(ok.values())
        for k, v in ok.items():
            tally[k][0] += v
            tally[k][1] += 1
    return tally


def cmd_verify(args) -> Report:
    count = args.sweep if args.sweep is not None else 100
    if count < 0:
        raise CommandError("--sweep must be nonnegative")
    tally = sweep(count, args.seed)
    full = tally.pop("all")
    rep = Report("verify", provenance={"sweep": str(count), "seed": str(args.seed)})
    rep.lines.append(f"{'check':<16} {'agree':>6} {'total':>6}")
    for k, (ok, total) in tally.items():
        rep.lines.append(f"{k:<16} {ok:>6} {total:>6}")
        rep.values[k] = f"{ok}/{total}"
        rep.verdicts[k] = ok == total
    rep.lines.append(f"{full[0]}/{count} AGREE")
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conductors",
                                     description="Exact Artin and Swan conductors.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", metavar="PATH")
        p.add_argument("--output", metavar="PATH", help="also write the report as JSON")
        p.add_argument("--strict", action="store_true", help="assert integrality of conductors")
        return p

    p = common(sub.add_parser("filtration", help="Herbrand functions and upper breaks"))
    p.add_argument("--tsv", action="store_true", help="emit phi breakpoints as TSV")
    common(sub.add_parser("conductor", help="conductor of a character by every formula"))
    common(sub.add_parser("wd", help="integral, Serre and Deligne conductors"))
    p = sub.add_parser("examples", help="emit realizable instance files")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--character", type=int, default=None, metavar="K")
    p.add_argument("--primitive", action="store_true")
    p.add_argument("--q", type=int, default=5)
    p.add_argument("--output", metavar="PATH")
    p = sub.add_parser("verify", help="differential sweep on random instances")
    p.add_argument("--sweep", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--output", metavar="PATH")
    return parser


COMMANDS = {"filtration": cmd_filtration, "conductor": cmd_conductor, "wd": cmd_wd,
            "verify": cmd_verify}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "examples":
            text = cmd_examples(args)
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                stdout.write(text)
            return EXIT_AGREE
        report = COMMANDS[args.command](args)
    except (CommandError, InstanceError, ch.NotACharacterError, ch.IntegralityError,
            ch.PreconditionError, wdm.RepresentationError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    if args.command == "filtration" and args.tsv:
        stdout.write(report.tsv)
    else:
        stdout.write(report.render())
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(report.to_json())
    return EXIT_AGREE if report.agree else EXIT_DISAGREE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
