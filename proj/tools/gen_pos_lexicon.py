#!/usr/bin/env python3
"""Regenerate data/pos_lexicon.tsv from a Brill-format lexicon.

Input lines look like `word TAG [TAG...]`; the first tag is the most
frequent one. Output keeps single lowercase word forms and collapses the
Penn tags onto the five coarse classes the feature extractor counts:
n (noun), v (verb), a (adjective), r (adverb), o (anything else).

Usage: gen_pos_lexicon.py en-lexicon.txt > data/pos_lexicon.tsv
"""
import re
import sys

WORD = re.compile(r"^[a-z][a-z0-9']*$")
AUX = {"be", "is", "am", "are", "was", "were", "been", "being", "'s", "'re", "'m"}


def coarse(tag):
    tag = tag.split("|")[0]
    if tag in ("NN", "NNS", "NNP", "NNPS"):
        return "n"
    if tag.startswith("VB"):
        return "v"
    if tag in ("JJ", "JJR", "JJS"):
        return "a"
    if tag in ("RB", "RBR", "RBS"):
        return "r"
    return "o"


def main(path):
    entries = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.startswith(";"):
                continue
            parts = line.split()
            if len(parts) < 2 or not WORD.match(parts[0]):
                continue
            word = parts[0]
            entries[word] = "o" if word in AUX else coarse(parts[1])
    out = sys.stdout
    out.write("# word\tclass (n=noun v=verb a=adjective r=adverb o=other)\n")
    out.write("# derived from the Brill tagger lexicon (MIT license)\n")
    for word in sorted(entries):
        out.write(f"{word}\t{entries[word]}\n")


if __name__ == "__main__":
    main(sys.argv[1])
