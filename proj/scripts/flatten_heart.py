#!/usr/bin/env python3
"""Flatten the raw UCI heart-disease databases into one CSV.

The raw files (cleveland.data, hungarian.data, switzerland.data,
long-beach-va.data) store each patient as whitespace-separated tokens spread
over several lines, terminated by the literal token "name". This script emits
one CSV row per record with the 76 attribute names as header.

Conventions:
  * a record with exactly 75 numeric tokens before "name" becomes a row; the
    "name" column is written empty (it carries no data);
  * a record with any other token count is damaged and is written as a row of
    "?" (missing) cells so it is counted but dropped by complete cases;
  * raw "-9" codes are written unchanged; pass --na -9 to the CLI to mask them.
"""
import argparse
import sys

NAMES = """id ccf age sex painloc painexer relrest pncaden cp trestbps htn chol smoke cigs
years fbs dm famhist restecg ekgmo ekgday ekgyr dig prop nitr pro diuretic proto thaldur
thaltime met thalach thalrest tpeakbps tpeakbpd dummy trestbpd exang xhypo oldpeak slope
rldv5 rldv5e ca restckm exerckm restef restwm exeref exerwm thal thalsev thalpul earlobe
cmo cday cyr num lmt ladprox laddist diag cxmain ramus om1 om2 rcaprox rcadist lvx1 lvx2
lvx3 lvx4 lvf cathef junk name""".split()
assert len(NAMES) == 76


def records(path):
    with open(path, encoding="latin-1") as fh:
        tokens = fh.read().split()
    current = []
    for tok in tokens:
        if tok == "name":
            yield current
            current = []
        else:
            current.append(tok)
    if current:
        yield current


def is_number(tok):
    try:
        float(tok)
        return True
    except ValueError:
        return False


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("inputs", nargs="+", help="raw .data files, in the order to concatenate")
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args()

    good = bad = 0
    with open(args.output, "w", encoding="utf-8") as out:
        out.write(",".join(NAMES) + "\n")
        for path in args.inputs:
            for rec in records(path):
                if len(rec) == 75 and all(is_number(t) for t in rec):
                    out.write(",".join(rec) + ",\n")
                    good += 1
                else:
                    out.write(",".join(["?"] * 76) + "\n")
                    bad += 1
    print(f"{good + bad} records written ({good} intact, {bad} damaged -> all missing)", file=sys.stderr)


if __name__ == "__main__":
    main()
