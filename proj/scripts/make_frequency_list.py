"""Regenerate data/english_freq.tsv from the wordfreq package.

Keeps the most frequent purely alphabetic English words (length >= 2) and
stores their frequency as an integer count per 100 million tokens.
"""
import re
import sys
from importlib.metadata import version

import wordfreq

ENTRIES = 7726


def main(path):
    seen = set()
    rows = []
    for word in wordfreq.top_n_list("en", 20000):
        if not re.fullmatch("[a-z]+", word) or len(word) < 2 or word in seen:
            continue
        seen.add(word)
        rows.append((word, round(wordfreq.word_frequency(word, "en") * 1e8)))
        if len(rows) == ENTRIES:
            break
    with open(path, "w", encoding="utf-8") as out:
        out.write("# word\tcount_per_100M (wordfreq %s, top %d alphabetic entries)\n"
                  % (version("wordfreq"), ENTRIES))
        for word, count in rows:
            out.write("%s\t%d\n" % (word, count))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/english_freq.tsv")
