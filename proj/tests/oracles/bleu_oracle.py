#!/usr/bin/env python3
"""Scores tests/fixtures/bleu_pairs.json with sacrebleu and writes the
expected values to tests/fixtures/bleu_expected.json.

Run once before building; the output is committed and read by the tests.
"""

import json
import os
import sys

from sacrebleu.metrics import BLEU

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, "..", "fixtures")


def main():
    with open(os.path.join(FIXTURES, "bleu_pairs.json"), encoding="utf-8") as f:
        pairs = json.load(f)
    cands = [p["candidate"] for p in pairs]
    refs = [p["reference"] for p in pairs]
    bleu = BLEU(tokenize="13a", smooth_method="exp", lowercase=False, effective_order=False)
    corpus = bleu.corpus_score(cands, [refs])
    per_pair = []
    for c, r in zip(cands, refs):
        s = BLEU(tokenize="13a", smooth_method="exp", effective_order=False).corpus_score([c], [[r]])
        per_pair.append(round(s.score, 6))
    identity = bleu.corpus_score(refs, [refs]).score
    empty = bleu.corpus_score([""] * len(refs), [refs]).score
    out = {
        "signature": str(bleu.get_signature()),
        "corpus": round(corpus.score, 6),
        "sys_len": corpus.sys_len,
        "ref_len": corpus.ref_len,
        "counts": corpus.counts,
        "totals": corpus.totals,
        "per_pair": per_pair,
        "identity": identity,
        "empty_candidates": empty,
        "tokenized": [bleu.tokenizer(c) for c in cands],
    }
    with open(os.path.join(FIXTURES, "bleu_expected.json"), "w", encoding="utf-8") as f:
        json.dump(out, f, ensure_ascii=False, indent=1)
        f.write("\n")
    print(out["signature"], out["corpus"], file=sys.stderr)


if __name__ == "__main__":
    main()
