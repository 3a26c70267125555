#!/usr/bin/env python3
# Copyright 2026 The tlg Authors.
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

"""Generate the bundled multi-topic desk corpus (data/desk_corpus.txt).

Each line is one document. Documents mix one or two themes; sentences are
drawn from a handful of templates that interleave function words with
theme vocabulary, so an n-gram model learns fluent-ish syntax and a topic
model can recover the themes. Output is deterministic for a given seed.
"""

import argparse
import random

THEMES = {
    "football": {
        "noun": ["football", "team", "coach", "league", "player", "match", "goal",
                 "stadium", "season", "club", "striker", "referee", "fans",
                 "championship", "defender", "tournament", "pitch", "rugby",
                 "quarterback", "touchdown"],
        "verb": ["scored", "defeated", "trained", "tackled", "kicked", "won",
                 "coached", "drafted"],
        "adj": ["athletic", "offensive", "defensive", "professional", "injured",
                "unbeaten", "rookie", "veteran"],
    },
    "politics": {
        "noun": ["election", "president", "party", "senate", "vote", "law",
                 "government", "candidate", "policy", "campaign", "congress",
                 "governor", "legislature", "democracy", "voters", "minister",
                 "parliament", "debate", "reform", "ballot"],
        "verb": ["elected", "vetoed", "campaigned", "legislated", "voted",
                 "debated", "governed", "nominated"],
        "adj": ["presidential", "political", "conservative", "liberal",
                "democratic", "federal", "partisan", "electoral"],
    },
    "music": {
        "noun": ["music", "song", "album", "band", "guitar", "concert", "singer",
                 "melody", "rhythm", "piano", "orchestra", "lyrics", "drummer",
                 "jazz", "chorus", "symphony", "studio", "tour", "violin",
                 "record"],
        "verb": ["sang", "recorded", "composed", "performed", "strummed",
                 "played", "released", "toured"],
        "adj": ["acoustic", "musical", "melodic", "classical", "loud", "catchy",
                "lyrical", "rhythmic"],
    },
    "physics": {
        "noun": ["physics", "energy", "particle", "electron", "frequency",
                 "radiation", "quantum", "field", "wave", "photon", "mass",
                 "gravity", "laser", "atom", "velocity", "magnet", "circuit",
                 "spectrum", "neutron", "voltage"],
        "verb": ["measured", "emitted", "absorbed", "accelerated", "radiated",
                 "collided", "oscillated", "decayed"],
        "adj": ["electromagnetic", "nuclear", "thermal", "kinetic", "magnetic",
                "optical", "subatomic", "relativistic"],
    },
    "transportation": {
        "noun": ["car", "train", "highway", "vehicle", "truck", "railway",
                 "airport", "traffic", "engine", "bus", "driver", "fuel",
                 "bicycle", "subway", "freight", "road", "passenger", "tire",
                 "garage", "motorcycle"],
        "verb": ["drove", "parked", "repaired", "towed", "fueled", "commuted",
                 "braked", "shipped"],
        "adj": ["electric", "diesel", "fast", "crowded", "automotive", "used",
                "hybrid", "rural"],
    },
    "media": {
        "noun": ["media", "television", "news", "broadcast", "journalist",
                 "newspaper", "radio", "channel", "reporter", "editor",
                 "headline", "network", "magazine", "interview", "coverage",
                 "audience", "podcast", "anchor", "documentary", "press"],
        "verb": ["reported", "broadcasted", "published", "aired", "edited",
                 "interviewed", "streamed", "covered"],
        "adj": ["public", "digital", "local", "national", "breaking", "weekly",
                "independent", "online"],
    },
}

GENERIC_NOUNS = ["people", "time", "year", "way", "day", "world", "thing",
                 "part", "group", "number"]
GENERIC_ADJS = ["new", "good", "big", "great", "important", "other", "small",
                "old"]
PRONOUNS = ["He", "She", "They", "We", "It"]

TEMPLATES = [
    "The {a} {n} {v} the {n2} .",
    "The issue is that the {n} {v} the {a} {n2} .",
    "{P} said that the {n} was very {a} for the {gn} .",
    "Many people think about the {n} and the {n2} every {gn2} .",
    "In the {n} , the {a} {n2} {v} a {ga} {gn} .",
    "{P} {v} the {n} with the {n2} on that {gn2} .",
    "There is a {a} {n} in the {gn} and it is {ga} .",
    "The {n} of the {n2} {v} more than the {gn} .",
    "A {ga} {n} {v} the {a} {n2} after the {n3} .",
    "This {gn2} the {n} will be part of the {a} {n2} .",
]


def sentence(rng, theme):
    words = THEMES[theme]
    t = rng.choice(TEMPLATES)
    nouns = rng.sample(words["noun"], 3)
    return t.format(
        a=rng.choice(words["adj"]),
        n=nouns[0],
        n2=nouns[1],
        n3=nouns[2],
        v=rng.choice(words["verb"]),
        P=rng.choice(PRONOUNS),
        gn=rng.choice(GENERIC_NOUNS),
        gn2=rng.choice(["day", "year", "time", "week"]),
        ga=rng.choice(GENERIC_ADJS),
    )


def document(rng, names):
    if rng.random() < 0.6:
        themes = [rng.choice(names)]
        weights = [1.0]
    else:
        themes = rng.sample(names, 2)
        w = rng.uniform(0.3, 0.7)
        weights = [w, 1.0 - w]
    n = rng.randint(4, 8)
    out = []
    for _ in range(n):
        theme = rng.choices(themes, weights=weights)[0]
        out.append(sentence(rng, theme))
    return " ".join(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--docs", type=int, default=3000)
    ap.add_argument("--seed", type=int, default=20201028)
    ap.add_argument("--out", default="data/desk_corpus.txt")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    names = sorted(THEMES)
    with open(args.out, "w", encoding="utf-8") as fh:
        for _ in range(args.docs):
            fh.write(document(rng, names) + "\n")


if __name__ == "__main__":
    main()
