#!/usr/bin/env python3
"""Export activity traces for the constituent rise/decline phrases."""

import argparse
from pathlib import Path

from nba.blackboard import Blackboard
from nba.encoder import compile, parse_conllu
from nba.lexicon import Lexicon
from nba.trace import detect_rise_decline, export, trace_encode

PHRASES = {
    "ten_sad_students": (
        "1\tten\t_\tADJ\t_\t_\t3\tamod\t_\t_\n"
        "2\tsad\t_\tADJ\t_\t_\t3\tamod\t_\t_\n"
        "3\tstudents\t_\tNOUN\t_\t_\t0\troot\t_\t_\n"
    ),
    "ten_sad_students_of_bill_gates": (
        "1\tten\t_\tADJ\t_\t_\t3\tamod\t_\t_\n"
        "2\tsad\t_\tADJ\t_\t_\t3\tamod\t_\t_\n"
        "3\tstudents\t_\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "4\tof\t_\tADP\t_\t_\t6\tcase\t_\t_\n"
        "5\tBill\t_\tPROPN\t_\t_\t6\tamod\t_\t_\n"
        "6\tGates\t_\tPROPN\t_\t_\t3\tnmod\t_\t_\n"
    ),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("traces"))
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    for name, text in PHRASES.items():
        tokens, arcs = parse_conllu(text)
        program = compile(tokens, arcs)
        _, trace = trace_encode(program, Blackboard(Lexicon()))
        path = args.outdir / f"{name}.{args.format}"
        path.write_bytes(export(trace, args.format))
        print(f"{name}: {len(trace.samples)} samples -> {path}")
        for span in program.spans:
            report = detect_rise_decline(trace, span)
            print(
                f"  span {span.start}..{span.end}: rose={report.rose} "
                f"declined={report.declined} peak={report.peak:g}"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
