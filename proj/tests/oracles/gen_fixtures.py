"""Regenerates the bundled fixtures and their expected outputs.

Everything expected here is computed in Python, independently of the C++
code: tokenizing and matching by a naive scan, Cronbach's alpha from the
covariance matrix (numpy), Pearson r and p from scipy, Gwet's AC1 and its
variance in exact rational arithmetic, and stems from snowballstemmer.

    pip install snowballstemmer==2.2.0 wordfreq numpy scipy
    python tests/oracles/gen_fixtures.py

Outputs (under tests/data):
    merge/<lang>/translations.csv, merge/<lang>/decisions.csv, merge/expected.json
    agreement/nl/sample.csv, agreement/nl/second.csv, agreement/expected.json
    mini/dictionary_nl.csv, mini/companion.dic, mini/corpus_a.csv, mini/corpus_b.jsonl,
    mini/config.json, report_nl.json
    golden/*.md, golden/scores_corpus_a.csv, golden/mini_expected.json
"""

import json
import math
import pathlib
import random
import unicodedata
from fractions import Fraction

import numpy as np
import snowballstemmer
from scipy import stats
from wordfreq import top_n_list

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"

CATS = ["deadline", "desperation", "fixation", "frustration", "god", "grievance",
        "hate", "help", "honour", "impostor", "jealousy", "loneliness",
        "murder", "paranoia", "planning", "relationship", "soldier", "suicide",
        "surveillance", "threat", "violence", "weaponry"]
LANG_NAME = {"en": "English", "nl": "Dutch", "de": "German", "it": "Italian"}
STEMMER = {"en": "english", "nl": "dutch", "de": "german", "it": "italian"}

# Correction counts per language: accepted, corrected, added; removals follow from 5,513 in.
CORRECTION_COUNTS = {"nl": (5023, 327, 98), "de": (5447, 66, 149), "it": (5160, 353, 97)}
N_SOURCE = 5513

SHEET_COLS = ["id", "category", "source", "candidate", "semantically_correct",
              "contextually_correct", "replacement", "additions"]


# ---------------------------------------------------------------------------
# helpers

def csv_field(s):
    if any(c in s for c in ',"\r\n') or (s and (s[0] == " " or s[-1] == " ")):
        return '"' + s.replace('"', '""') + '"'
    return s


def csv_line(fields):
    return ",".join(csv_field(f) for f in fields) + "\n"


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def word_list(lang, n):
    out, seen = [], set()
    for w in top_n_list(lang, n):
        if len(w) >= 3 and w.isalpha() and w == w.lower() and all(ord(c) < 0x250 for c in w) and w not in seen:
            seen.add(w)
            out.append(w)
    return out


def fixed2(v):
    s = "%.2f" % v
    return "0.00" if s == "-0.00" else s


def check_rounding(v, what):
    # A value sitting on a rounding boundary could print differently after
    # harmless floating-point differences.
    x = abs(v) * 100
    if abs(x - math.floor(x) - 0.5) < 1e-9:
        raise SystemExit(f"{what} = {v!r} is on a rounding boundary; change the fixture seed")


def thousands(n):
    return f"{n:,}"


def display(cat):
    return cat[:1].upper() + cat[1:] if cat[:1].isascii() else cat


def md_row(cells):
    return "|" + "".join(" " + c + " |" for c in cells) + "\n"


def md_rule(n):
    return "|" + "---|" * n + "\n"


def stem_surface(surface, lang):
    st = snowballstemmer.stemmer(STEMMER[lang])
    if surface.endswith("*"):
        return surface
    return " ".join(st.stemWord(t) for t in surface.split(" "))


def category_counts_split(total, rng, minimum):
    weights = [rng.uniform(0.6, 1.4) for _ in CATS]
    scale = total / sum(weights)
    counts = [max(minimum, int(w * scale)) for w in weights]
    i = 0
    while sum(counts) != total:
        step = 1 if sum(counts) < total else -1
        if counts[i % len(counts)] + step >= minimum:
            counts[i % len(counts)] += step
        i += 1
    return counts


# ---------------------------------------------------------------------------
# merge fixtures

def gen_merge():
    rng = random.Random("psylex-merge-source")
    en_words = word_list("en", 40000)
    rng.shuffle(en_words)
    counts = category_counts_split(N_SOURCE, rng, 120)
    sources = []
    it = iter(en_words)
    for cat, n in zip(CATS, counts):
        for _ in range(n):
            sources.append((cat, next(it)))

    expected = {}
    for lang, (accepted, corrected, added) in CORRECTION_COUNTS.items():
        removed = N_SOURCE - accepted - corrected
        rng = random.Random(f"psylex-merge-{lang}")
        pool = word_list(lang, 60000)
        rng.shuffle(pool)
        pool_it = iter(pool)

        def fresh():
            w = next(pool_it)
            # An occasional two-word phrase exercises per-token stemming.
            if rng.random() < 0.02:
                w = w + " " + next(pool_it)
            return w

        records = []
        for cat, src in sources:
            records.append({"id": f"{cat}:{src}", "category": cat, "source": src, "candidate": fresh()})

        kinds = ["acc"] * accepted + ["cor"] * corrected + ["rem"] * removed
        rng.shuffle(kinds)
        # Additions go to kept records, one or two at a time.
        adds = [[] for _ in records]
        kept_idx = [i for i, k in enumerate(kinds) if k != "rem"]
        left = added
        while left:
            i = rng.choice(kept_idx)
            if adds[i]:
                continue
            k = min(left, rng.choice([1, 1, 1, 2]))
            adds[i] = [next(pool_it) for _ in range(k)]
            left -= k

        flag_words = {"nl": ("true", "false"), "de": ("yes", "no"), "it": ("1", "0")}[lang]
        T, F = flag_words
        trans = csv_line(["id", "category", "source", "candidate", "provider", "status", "replacement", "additions"])
        sheet = csv_line(SHEET_COLS)
        decisions = {}
        unstemmed = set()
        for r, kind, a in zip(records, kinds, adds):
            trans += csv_line([r["id"], r["category"], r["source"], r["candidate"], "offline", "pending", "", ""])
            if kind == "acc":
                sem, ctx, rep = True, True, ""
                unstemmed.add((r["candidate"], r["category"]))
            else:
                sem, ctx = rng.choice([(False, True), (True, False), (False, False)])
                rep = next(pool_it) if kind == "cor" else "-"
                if kind == "cor":
                    unstemmed.add((rep, r["category"]))
            for w in a:
                unstemmed.add((w, r["category"]))
            decisions[r["id"]] = {"correct": sem and ctx, "sem": sem, "ctx": ctx, "rep": rep, "add": a}
            sheet += csv_line([r["id"], r["category"], r["source"], r["candidate"], T if sem else F,
                               F if not ctx else T, rep, ";".join(a)])
        write(DATA / "merge" / lang / "translations.csv", trans)
        write(DATA / "merge" / lang / "decisions.csv", sheet)

        stemmed = {(stem_surface(s, lang), c) for s, c in unstemmed}
        per_cat = {c: 0 for c in CATS}
        for s, c in stemmed:
            per_cat[c] += 1
        expected[lang] = {
            "input_size": N_SOURCE, "correctly_translated": accepted, "words_corrected": corrected,
            "words_removed": removed, "new_words": added, "unstemmed_size": accepted + corrected + added,
            "dictionary_size": len(unstemmed), "stemmed_size": len(stemmed), "stemmed_per_category": per_cat,
        }
        expected[lang]["_records"] = records
        expected[lang]["_decisions"] = decisions
    public = {k: {kk: vv for kk, vv in v.items() if not kk.startswith("_")} for k, v in expected.items()}
    write(DATA / "merge" / "expected.json", json.dumps(public, indent=2, ensure_ascii=False) + "\n")
    return expected


# ---------------------------------------------------------------------------
# agreement fixture

def gwet_ac1_exact(pairs):
    """Gwet's AC1 and its variance for two raters and two categories, exact."""
    n = len(pairs)
    p = {(k, l): Fraction(0) for k in (0, 1) for l in (0, 1)}
    for a, b in pairs:
        p[(0 if a else 1, 0 if b else 1)] += Fraction(1, n)
    pi = [(sum(p[(k, l)] for l in (0, 1)) + sum(p[(l, k)] for l in (0, 1))) / 2 for k in (0, 1)]
    pa = p[(0, 0)] + p[(1, 1)]
    pe = sum(pi[k] * (1 - pi[k]) for k in (0, 1))
    g = (pa - pe) / (1 - pe)
    t2 = sum(p[(k, k)] * (1 - pi[k]) for k in (0, 1)) - pa * pe
    t3 = sum(p[(k, l)] * (1 - (pi[k] + pi[l]) / 2) ** 2 for k in (0, 1) for l in (0, 1)) - pe * pe
    var = (pa * (1 - pa) - 4 * (1 - g) * t2 + 4 * (1 - g) ** 2 * t3) / (n * (1 - pe) ** 2)
    return g, var


def gen_agreement(merge):
    lang = "nl"
    rng = random.Random("psylex-agreement-nl")
    records = merge[lang]["_records"]
    first = merge[lang]["_decisions"]
    by_cat = {c: [] for c in CATS}
    for i, r in enumerate(records):
        by_cat[r["category"]].append(i)
    picked = sorted(i for c in CATS for i in rng.sample(by_cat[c], 25))

    # Disagreements per category; zeros where the first annotator marked
    # everything correct give perfect agreement.
    pattern = [1, 0, 2, 1, 0, 3, 1, 0, 2, 1, 0, 1, 4, 0, 1, 2, 0, 1, 0, 2, 1, 1]
    flips = set()
    for c, d in zip(CATS, pattern):
        ids = [i for i in picked if records[i]["category"] == c]
        flips.update(rng.sample(ids, d))

    pool = word_list(lang, 60000)[-3000:]
    rng.shuffle(pool)
    sample = csv_line(SHEET_COLS)
    second = csv_line(SHEET_COLS)
    pairs = {c: [] for c in CATS}
    for i in picked:
        r = records[i]
        base = [r["id"], r["category"], r["source"], r["candidate"]]
        sample += csv_line(base + ["", "", "", ""])
        a = first[r["id"]]["correct"]
        b = (not a) if i in flips else a
        if b:
            second += csv_line(base + ["true", "true", "", ""])
        else:
            second += csv_line(base + ["false", "true", pool.pop(), ""])
        pairs[r["category"]].append((a, b))
    write(DATA / "agreement" / lang / "sample.csv", sample)
    write(DATA / "agreement" / lang / "second.csv", second)

    z = 1.959963984540054
    rows = []
    exp = {}
    for c in CATS:
        g, var = gwet_ac1_exact(pairs[c])
        gf, vf = float(g), float(var)
        entry = {"n": len(pairs[c]), "ac1": gf, "variance": vf}
        check_rounding(gf, f"AC1 {c}")
        if vf > 0:
            half = z * math.sqrt(vf)
            lo, hi = max(-1.0, gf - half), min(1.0, gf + half)
            check_rounding(lo, f"CI low {c}")
            check_rounding(hi, f"CI high {c}")
            entry.update(ci_low=lo, ci_high=hi)
            cell = f"{fixed2(gf)} [{fixed2(lo)} - {fixed2(hi)}]"
        else:
            cell = fixed2(gf)
        exp[c] = entry
        rows.append((c, merge[lang]["stemmed_per_category"][c], cell))
    write(DATA / "agreement" / "expected.json", json.dumps({lang: exp}, indent=2) + "\n")

    label = LANG_NAME[lang]
    md = md_row(["Category", f"{label} No. terms", f"{label} AC1 [CI]"]) + md_rule(3)
    for c, n, cell in rows:
        md += md_row([display(c), thousands(n), cell])
    md += md_row(["Total", thousands(sum(n for _, n, _ in rows)), ""])
    write(DATA / "golden" / "agreement_nl.md", md)
    return md


def corrections_md(merge):
    md = md_row(["Language", "Correctly translated", "Words corrected", "Words removed", "New words",
                 "Unstemmed dictionary", "Stemmed dictionary (final)"]) + md_rule(7)
    s = merge["nl"]
    md += md_row([LANG_NAME["nl"], thousands(s["correctly_translated"]), thousands(s["words_corrected"]),
                  thousands(s["words_removed"]), thousands(s["new_words"]), thousands(s["unstemmed_size"]),
                  thousands(s["stemmed_size"])])
    return md


# ---------------------------------------------------------------------------
# mini dictionary + corpora (Tables 5 and 6-8 shape)

def is_mark(c):
    o = ord(c)
    return (0x300 <= o <= 0x36F) or (0x1AB0 <= o <= 0x1AFF) or (0x1DC0 <= o <= 0x1DFF) or \
           (0x20D0 <= o <= 0x20FF) or (0xFE20 <= o <= 0xFE2F)


def tokenize(text):
    tokens, cur, has_letter = [], [], False
    for ch in text:
        if ch.isalpha():
            cur.append(ch.lower())
            has_letter = True
        elif ("0" <= ch <= "9") or (cur and is_mark(ch)):
            cur.append(ch)
        else:
            if has_letter:
                tokens.append("".join(cur))
            cur, has_letter = [], False
    if has_letter:
        tokens.append("".join(cur))
    return tokens


def pattern_ok(pattern, token):
    if pattern.endswith("*"):
        return token.startswith(pattern[:-1])
    return token == pattern


def entry_len_at(entry, tokens, pos):
    parts = entry.split(" ")
    if pos + len(parts) > len(tokens):
        return 0
    return len(parts) if all(pattern_ok(p, tokens[pos + i]) for i, p in enumerate(parts)) else 0


def naive_category_counts(entries, cats, tokens):
    """entries: list of (surface, category). Greedy longest match per category."""
    counts = []
    for c in cats:
        es = [s for s, ec in entries if ec == c]
        n, pos = 0, 0
        while pos < len(tokens):
            best = max((entry_len_at(e, tokens, pos) for e in es), default=0)
            if best:
                n += 1
                pos += best
            else:
                pos += 1
        counts.append(n)
    return counts


def naive_entry_counts(entries, tokens):
    out = []
    for s, _ in entries:
        n, pos = 0, 0
        while pos < len(tokens):
            l = entry_len_at(s, tokens, pos)
            if l:
                n += 1
                pos += l
            else:
                pos += 1
        out.append(n)
    return out


def alpha_cov(x):
    n, k = x.shape
    if n < 2 or k < 2:
        return None
    c = np.cov(x, rowvar=False, ddof=1)
    total = c.sum()
    if total == 0:
        return None
    return k / (k - 1) * (1 - np.trace(c) / total)


def gen_mini():
    lang = "nl"
    rng = random.Random("psylex-mini")
    st = snowballstemmer.stemmer(STEMMER[lang])
    words = word_list(lang, 12000)
    common = words[:400]
    candidates = [w for w in words[1500:9000] if len(w) >= 5]
    rng.shuffle(candidates)
    used_stems = set(st.stemWord(w) for w in common)

    def take():
        while True:
            w = candidates.pop()
            s = st.stemWord(w)
            if s not in used_stems and len(s) >= 4:
                used_stems.add(s)
                return w

    # Grievance-style dictionary: 22 categories, mostly 4-6 words, one
    # wildcard and one phrase here and there, one single-word category.
    dict_rows = []     # (surface as written, category)
    forms = {}         # surface -> list of corpus forms that should match it
    for ci, c in enumerate(CATS):
        n = 1 if c == "impostor" else rng.randint(4, 6)
        for j in range(n):
            w = take()
            if j == 0 and ci % 5 == 2:
                prefix = st.stemWord(w)[:4]
                surface = prefix + "*"
                forms[surface] = [w, prefix + "heid", prefix + "en"]
            elif j == 1 and ci % 4 == 1:
                w2 = take()
                surface = w + " " + w2
                forms[surface] = [w + " " + w2]
            else:
                surface = w
                forms[surface] = [w, w + "en" if not w.endswith("en") else w]
            dict_rows.append((surface, c))
    dict_csv = "word,category\n" + "".join(csv_line([s, c]) for s, c in dict_rows)
    write(DATA / "mini" / "dictionary_nl.csv", dict_csv)

    # Companion LIWC-style dictionary over a different vocabulary, with some
    # overlap with the grievance words so the correlations have structure.
    comp_cats = ["affect", "anger", "calm", "death", "family", "religion", "risk", "social"]
    comp_rows = {c: [] for c in comp_cats}
    links = {"anger": ["hate", "frustration", "violence", "threat"], "death": ["murder", "suicide", "weaponry"],
             "religion": ["god"], "family": ["relationship", "jealousy"], "risk": ["paranoia", "surveillance"],
             "social": ["loneliness", "help"], "affect": ["desperation", "grievance", "hate"], "calm": []}
    linked = {g: [c for c in links if g in links[c]] for g in CATS}
    hostile = ["violence", "murder", "threat", "hate", "weaponry"]
    for c in comp_cats:
        for g in links[c]:
            for s, gc in dict_rows:
                if gc == g and not s.endswith("*") and " " not in s:
                    comp_rows[c].append(s)
                    break
        for _ in range(4):
            comp_rows[c].append(take())
    comp_rows["anger"].append(take()[:4] + "*")
    lines = ["%"] + [f"{i + 1}\t{c}" for i, c in enumerate(comp_cats)] + ["%"]
    seen = {}
    for i, c in enumerate(comp_cats):
        for w in comp_rows[c]:
            seen.setdefault(w, []).append(i + 1)
    for w, ids in seen.items():
        lines.append(w + "\t" + "\t".join(str(i) for i in ids))
    write(DATA / "mini" / "companion.dic", "\n".join(lines) + "\n")
    # Entry order in the parsed dictionary: file order, one entry per id.
    comp_entries = [(w, comp_cats[i - 1]) for w, ids in seen.items() for i in ids]
    comp_forms = {w: ([w[:-1] + "ing", w[:-1] + "st"] if w.endswith("*") else [w]) for w, _ in comp_entries}

    def make_doc(r):
        active = r.sample(CATS, r.randint(2, 6))
        weight = {c: r.uniform(0.5, 3) for c in active}
        # Calm words are common only when nothing hostile is going on.
        calm_rate = 0.0 if "violence" in active else 0.04 if any(g in active for g in hostile) else 0.16
        length = r.randint(60, 160)
        out = []
        for k in range(length):
            u = r.random()
            if u < 0.22:
                c = r.choices(active, [weight[a] for a in active])[0]
                s = r.choice([s for s, ec in dict_rows if ec == c])
                w = r.choice(forms[s])
                # Grievance words pull in related companion words.
                if linked[c] and r.random() < 0.85:
                    cc = r.choice(linked[c])
                    w += " " + r.choice(comp_forms[r.choice(comp_rows[cc])])
            elif u < 0.22 + calm_rate:
                w = r.choice(comp_forms[r.choice(comp_rows["calm"])])
            elif u < 0.27 + calm_rate:
                c = r.choice(comp_cats)
                w = r.choice(comp_forms[r.choice(comp_rows[c])])
            else:
                w = r.choice(common)
            if r.random() < 0.08:
                w = w[:1].upper() + w[1:]
            out.append(w)
            if r.random() < 0.07:
                out[-1] += r.choice([".", ",", "!", "?", ";"])
            if r.random() < 0.02 and k + 1 < length:
                out[-1] += "-"
        text = " ".join(out).replace("- ", "-")
        return text

    corpus_a = {}
    ra = random.Random("psylex-mini-a")
    for i in range(50):
        corpus_a[f"a{i + 1:03d}"] = make_doc(ra)
    corpus_b = {}
    rb = random.Random("psylex-mini-b")
    for i in range(40):
        corpus_b[f"b{i + 1:03d}"] = make_doc(rb)
        if i == 17:
            corpus_b["b_empty"] = "— … — !!! 123 ..."
    write(DATA / "mini" / "corpus_a.csv",
          csv_line(["id", "text"]) + "".join(csv_line([k, v]) for k, v in corpus_a.items()))
    write(DATA / "mini" / "corpus_b.jsonl",
          "".join(json.dumps({"id": k, "text": v}, ensure_ascii=False) + "\n" for k, v in corpus_b.items()))

    config = {
        "language": "nl",
        "dictionary": {"path": "dictionary_nl.csv", "stem": True},
        "companion_dictionary": {"path": "companion.dic"},
        "corpora": [{"id": "corpus_a", "path": "corpus_a.csv"}, {"id": "corpus_b", "path": "corpus_b.jsonl"}],
        "alpha": 0.05,
        "output_dir": "out",
    }
    write(DATA / "mini" / "config.json", json.dumps(config, indent=2) + "\n")

    # --- oracle evaluation --------------------------------------------------
    # Stemmed grievance dictionary: literal words and phrase parts stemmed,
    # wildcards kept, duplicates collapsed in first-seen order.
    g_entries = []
    for s, c in dict_rows:
        e = (stem_surface(s, lang), c)
        if e not in g_entries:
            g_entries.append(e)

    def tokens_of(text, stem):
        t = tokenize(text)
        return [st.stemWord(x) for x in t] if stem else t

    corpora = {"corpus_a": corpus_a, "corpus_b": corpus_b}
    expected = {"reliability": {}, "scores": {}}
    g_scores, c_scores = {}, {}
    alphas = {c: [] for c in CATS}
    for cid, docs in corpora.items():
        g_rows, c_rows, items, ids = [], [], [], []
        for did, text in docs.items():
            tg = tokens_of(text, True)
            if not tg:
                continue
            tr = tokens_of(text, False)
            ids.append(did)
            g_rows.append([n / len(tg) for n in naive_category_counts(g_entries, CATS, tg)])
            c_rows.append([n / len(tr) for n in naive_category_counts(comp_entries, comp_cats, tr)])
            items.append([n / len(tg) for n in naive_entry_counts(g_entries, tg)])
        g_scores[cid] = np.array(g_rows)
        c_scores[cid] = np.array(c_rows)
        items = np.array(items)
        for c in CATS:
            cols = [j for j, (_, ec) in enumerate(g_entries) if ec == c]
            alphas[c].append(alpha_cov(items[:, cols]))
        if cid == "corpus_a":
            out = csv_line(["doc_id"] + CATS)
            for did, row in zip(ids, g_rows):
                out += csv_line([did] + [repr(v) for v in row])
            write(DATA / "golden" / "scores_corpus_a.csv", out)

    md5 = md_row(["Category", LANG_NAME[lang]]) + md_rule(2)
    for c in CATS:
        defined = [a for a in alphas[c] if a is not None]
        mean = sum(defined) / len(defined) if defined else None
        expected["reliability"][c] = {"alphas": alphas[c], "mean": mean}
        if mean is not None:
            check_rounding(mean, f"mean alpha {c}")
        md5 += md_row([display(c), fixed2(mean) if mean is not None else "NA"])
    write(DATA / "golden" / "reliability_nl.md", md5)

    alpha, m, top = 0.05, len(CATS), 3
    threshold = alpha / m
    md6 = md_row(["Category", "Strongest correlating categories", "", ""]) + md_rule(4)
    any_ns = False
    expected["correlations"] = {}
    for gi, g in enumerate(CATS):
        results = []
        for ki, k in enumerate(comp_cats):
            rs, sig, degenerate = [], True, False
            for cid in corpora:
                x, y = g_scores[cid][:, gi], c_scores[cid][:, ki]
                if np.std(x) == 0 or np.std(y) == 0:
                    degenerate = True
                    continue
                r, p = stats.pearsonr(x, y)
                if abs(p - threshold) < 1e-6 * threshold:
                    raise SystemExit(f"p for {g}/{k} is too close to the threshold")
                rs.append(float(r))
                sig = sig and p < threshold
            if degenerate:
                continue
            mean = sum(rs) / len(rs)
            expected["correlations"][f"{g}/{k}"] = {"r": rs, "mean": mean, "significant": bool(sig)}
            if sig:
                results.append((k, mean, min(rs), max(rs)))
        results.sort(key=lambda t: (-abs(t[1]), t[0]))
        cells = []
        for i in range(top):
            if i < len(results):
                k, mean, lo, hi = results[i]
                for v in (mean, lo, hi):
                    check_rounding(v, f"r {g}/{k}")
                cell = f"{k}: {fixed2(mean)} [{fixed2(lo)}-{fixed2(hi)}]"
                if mean < 0:
                    cell += " (negative)"
            else:
                cell = "NS"
                any_ns = True
            cells.append(cell)
        md6 += md_row([display(g)] + cells)
    md6 += "\nAll listed correlations are significant in every corpus at the p < %.2g (p < %g/%d) level." % (
        threshold, alpha, m)
    if any_ns:
        md6 += f" NS = not significant (fewer than {top} significantly correlating categories)."
    md6 += "\n"
    write(DATA / "golden" / "correlations_nl.md", md6)
    write(DATA / "golden" / "mini_expected.json", json.dumps(expected, indent=1) + "\n")
    return md5, md6


def main():
    merge = gen_merge()
    md3 = gen_agreement(merge)
    md4 = corrections_md(merge)
    md5, md6 = gen_mini()

    report_cfg = {
        "language": "nl",
        "dictionary": {"path": "mini/dictionary_nl.csv", "stem": True},
        "companion_dictionary": {"path": "mini/companion.dic"},
        "corpora": [{"id": "corpus_a", "path": "mini/corpus_a.csv"},
                    {"id": "corpus_b", "path": "mini/corpus_b.jsonl"}],
        "translations": "merge/nl/translations.csv",
        "annotations": {"first": "merge/nl/decisions.csv", "second": "agreement/nl/second.csv",
                        "sample": "agreement/nl/sample.csv"},
        "output_dir": "out",
    }
    write(DATA / "report_nl.json", json.dumps(report_cfg, indent=2) + "\n")
    report = "# Dictionary evaluation (Dutch)\n"
    for title, body in [("Agreement between annotators", md3), ("Dictionary corrections", md4),
                        ("Internal reliability", md5), ("Strongest correlating categories", md6)]:
        report += "\n## " + title + "\n\n" + body
    write(DATA / "golden" / "report_nl.md", report)


if __name__ == "__main__":
    main()
