#!/usr/bin/env python3
"""Regenerates core/src/unicode_data.inc from Python's unicodedata.

Emits sorted lookup tables: simple one-to-one lowercase mappings, category
ranges for letters / decimal digits / combining marks, and fully expanded
canonical (NFD) decompositions. Hangul syllables are decomposed
algorithmically in C++ and are excluded here.
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_FIRST, HANGUL_LAST = 0xAC00, 0xD7A3


def category_ranges(pred):
    ranges = []
    start = None
    for cp in range(MAX_CP):
        if pred(unicodedata.category(chr(cp))):
            if start is None:
                start = cp
        elif start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def lower_entries():
    entries = []
    for cp in range(MAX_CP):
        low = chr(cp).lower()
        if len(low) == 1 and ord(low) != cp:
            entries.append((cp, ord(low)))
    return entries


def canonical_decomposition():
    raw = {}
    for cp in range(MAX_CP):
        if HANGUL_FIRST <= cp <= HANGUL_LAST:
            continue
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        raw[cp] = [int(t, 16) for t in d.split()]

    expanded = {}

    def expand(cp):
        if cp in expanded:
            return expanded[cp]
        if cp not in raw:
            return [cp]
        seq = []
        for part in raw[cp]:
            seq.extend(expand(part))
        expanded[cp] = seq
        return seq

    return {cp: expand(cp) for cp in raw}


def emit_ranges(out, name, ranges):
    out.write(f"static constexpr CpRange {name}[] = {{\n")
    for i in range(0, len(ranges), 6):
        row = ", ".join("{0x%X, 0x%X}" % r for r in ranges[i:i + 6])
        out.write("    " + row + ",\n")
    out.write("};\n\n")


def main():
    out = open("core/src/unicode_data.inc", "w")
    out.write("// Unicode lookup tables generated by scripts/gen_unicode_tables.py\n")
    out.write("// (Python unicodedata, UCD %s). Do not edit by hand.\n\n"
              % unicodedata.unidata_version)

    emit_ranges(out, "kLetterRanges", category_ranges(lambda c: c[0] == "L"))
    emit_ranges(out, "kDigitRanges", category_ranges(lambda c: c == "Nd"))
    emit_ranges(out, "kMarkRanges", category_ranges(lambda c: c[0] == "M"))

    lowers = lower_entries()
    out.write("static constexpr CpPair kLowerEntries[] = {\n")
    for i in range(0, len(lowers), 6):
        row = ", ".join("{0x%X, 0x%X}" % e for e in lowers[i:i + 6])
        out.write("    " + row + ",\n")
    out.write("};\n\n")

    decomp = canonical_decomposition()
    pool = []
    entries = []
    for cp in sorted(decomp):
        seq = decomp[cp]
        entries.append((cp, len(pool), len(seq)))
        pool.extend(seq)
    out.write("static constexpr DecompEntry kDecompEntries[] = {\n")
    for i in range(0, len(entries), 5):
        row = ", ".join("{0x%X, %d, %d}" % e for e in entries[i:i + 5])
        out.write("    " + row + ",\n")
    out.write("};\n\n")
    out.write("static constexpr char32_t kDecompPool[] = {\n")
    for i in range(0, len(pool), 10):
        row = ", ".join("0x%X" % c for c in pool[i:i + 10])
        out.write("    " + row + ",\n")
    out.write("};\n")
    out.close()
    sys.stderr.write("entries: lower=%d decomp=%d pool=%d\n"
                     % (len(lowers), len(entries), len(pool)))


if __name__ == "__main__":
    main()
