#!/usr/bin/env python3
# Copyright 2026 The Rimes Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds a token<TAB>ipa lexicon for every word of a cleaned corpus.

Pronunciations come from eSpeak NG (French voice) through `phonemizer`;
`pip install phonemizer espeakng-loader` provides both. Stress and length
marks are dropped since the rhyme rules compare bare segments.

    python3 tools/make_lexicon.py corpus.jsonl > data/lexicon_fr.tsv
"""

import argparse
import json
import sys
import unicodedata

# Elided clitics pronounce as their consonant alone; eSpeak would spell out
# the letter name.
CLITICS = {
    "c": "s", "d": "d", "j": "ʒ", "l": "l", "m": "m", "n": "n",
    "qu": "k", "s": "s", "t": "t", "puisqu": "pɥisk", "lorsqu": "lɔʁsk",
}
# Words eSpeak reads with its English voice or as letter names.
OVERRIDES = {"a": "a", "à": "a", "y": "i", "ô": "o", "dos": "do", "luth": "lyt"}
DROP = {"ˈ", "ˌ", "ː", "‿", "-"}


def normalize(token):
    t = unicodedata.normalize("NFC", token).lower()
    is_punct = lambda c: unicodedata.category(c).startswith("P") or c.isspace()
    b, e = 0, len(t)
    while b < e and is_punct(t[b]):
        b += 1
    while e > b and is_punct(t[e - 1]):
        e -= 1
    return t[b:e]


def words(line):
    for chunk in line.split():
        parts, start = [], 0
        for i, ch in enumerate(chunk):
            if ch in "'’" and i + 1 < len(chunk):
                parts.append(chunk[start:i + 1])
                start = i + 1
        parts.append(chunk[start:])
        for p in parts:
            w = normalize(p)
            if any(c.isalpha() for c in w):
                yield w


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", nargs="+", help="corpus JSON-lines files")
    ap.add_argument("--extra", default="", help="comma-separated extra words")
    args = ap.parse_args()

    vocab = {normalize(w) for w in args.extra.split(",") if normalize(w)}
    for path in args.corpus:
        with open(path, encoding="utf-8") as f:
            for rec in f:
                if rec.strip():
                    for line in json.loads(rec)["lines"]:
                        vocab.update(words(line))

    import espeakng_loader
    from phonemizer.backend import EspeakBackend
    from phonemizer.backend.espeak.wrapper import EspeakWrapper
    EspeakWrapper.set_library(espeakng_loader.get_library_path())
    EspeakWrapper.set_data_path(espeakng_loader.get_data_path())
    backend = EspeakBackend("fr-fr", with_stress=False,
                            language_switch="remove-flags")

    fixed = {**CLITICS, **OVERRIDES}
    todo = sorted(w for w in vocab if w not in fixed)
    ipas = backend.phonemize(todo, strip=True)
    out = sys.stdout
    out.write("# token\tipa (eSpeak NG fr-fr, stress and length removed)\n")
    entries = {w: fixed[w] for w in vocab if w in fixed}
    for w, ipa in zip(todo, ipas):
        ipa = "".join(c for c in unicodedata.normalize("NFC", ipa)
                      if c not in DROP and not c.isspace())
        if ipa:
            entries[w] = ipa
    for w in sorted(entries):
        out.write(f"{w}\t{entries[w]}\n")


if __name__ == "__main__":
    main()
