"""Regenerate tests/data/double_metaphone_reference.tsv with abydos.

abydos is an independent Python port of the original Double Metaphone; the
C++ encoder is checked against its output, truncated to four symbols.
"""
import sys

from abydos.phonetic import DoubleMetaphone

EDGE_CASES = """
cabrillo gallegos rogier jose xavier schmidt smith filipowicz zhao breaux
czerny focaccia bellocchio bacchus mcclellan caesar chianti michael chemistry
chorus chore wachtler tichner ghislane ghiradelli hugh cagney tagliaro biaggi
hochmeier dumb thumb dumber island carlisle sugar schooner schermerhorn
resnais artois thomas wasserman arnow jankelowicz bajador edge edgar campbell
raspberry yankelovich gnome knight pneumonia wright psychology each such
laugh cough tough rough ghost accident succeed mcgregor orchestra architect
orchid danger ranger manger geology gym giant tagged womo uomo vasserman
""".split()

GROUP_WORDS = "industry units induced wound grateful creative cardiff".split()


def main(freq_path, out_path, stride=61):
    words = [l.split("\t")[0] for l in open(freq_path, encoding="utf-8")
             if l.strip() and not l.startswith("#")]
    sample = EDGE_CASES + GROUP_WORDS + words[::stride]
    seen = set()
    enc = DoubleMetaphone(max_length=4)
    with open(out_path, "w", encoding="utf-8") as out:
        out.write("# word\tprimary\talternate (abydos DoubleMetaphone, max_length=4)\n")
        for w in sample:
            if w in seen:
                continue
            seen.add(w)
            primary, alternate = enc.encode(w)
            out.write("%s\t%s\t%s\n" % (w, primary, alternate))


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
