#!/usr/bin/env python3
"""Generate the bundled synthetic case fixture (tests/data/cases_fixture.csv).

Deterministic: a fixed seed drives every draw, so rerunning this script
reproduces the committed file byte-for-byte. The generated table mimics a
line-list export: extra columns the pipeline must ignore, mixed delimiters,
casing and spacing noise, quoted tokens, and a handful of rows whose status
maps to no label.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

SEED = 20230715
N_POSITIVE = 138
N_NEGATIVE = 64
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "cases_fixture.csv"

TOKENS = [
    "abdominal pain", "back pain", "blisters", "body aches", "chest pain",
    "chills", "conjunctivitis", "cough", "diarrhea", "difficulty breathing",
    "dizziness", "dysphagia", "ear pain", "eye redness", "facial swelling",
    "fatigue", "fever", "general discomfort", "genital ulcers", "headache",
    "inguinal adenopathy", "itching", "joint pain", "loss of appetite",
    "lymphadenopathy", "malaise", "mouth sores", "muscle pain", "myalgia",
    "nausea", "night sweats", "oral ulcers", "pain urinating", "papules",
    "perianal lesions", "pustules", "rash", "runny nose", "skin lesions",
    "sore throat", "sweating", "swollen lymph nodes", "ulcerative lesions",
    "vesicles", "vomiting",
]

# Class-conditional symptom probabilities; anything absent falls back to the
# background rate. Positives skew toward dermatological presentation,
# negatives (suspected-then-discarded cases) toward respiratory complaints.
POSITIVE_RATES = {
    "rash": 0.82, "skin lesions": 0.58, "fever": 0.66, "swollen lymph nodes": 0.42,
    "pustules": 0.33, "vesicles": 0.28, "papules": 0.24, "ulcerative lesions": 0.22,
    "genital ulcers": 0.20, "lymphadenopathy": 0.22, "inguinal adenopathy": 0.16,
    "headache": 0.34, "fatigue": 0.32, "muscle pain": 0.28, "myalgia": 0.18,
    "chills": 0.24, "itching": 0.20, "oral ulcers": 0.14, "perianal lesions": 0.10,
    "pain urinating": 0.10, "mouth sores": 0.12, "malaise": 0.16, "back pain": 0.14,
    "night sweats": 0.10, "sore throat": 0.16,
}
NEGATIVE_RATES = {
    "fever": 0.52, "headache": 0.48, "cough": 0.50, "sore throat": 0.44,
    "runny nose": 0.38, "fatigue": 0.36, "muscle pain": 0.30, "body aches": 0.28,
    "chills": 0.26, "nausea": 0.18, "diarrhea": 0.16, "vomiting": 0.12,
    "dizziness": 0.12, "malaise": 0.18, "joint pain": 0.14, "chest pain": 0.10,
    "difficulty breathing": 0.10, "rash": 0.07, "skin lesions": 0.05,
    "loss of appetite": 0.12,
}
BACKGROUND = 0.02

COUNTRIES = [
    "England", "Spain", "Portugal", "Germany", "France", "USA", "Canada",
    "Brazil", "Nigeria", "Italy", "Netherlands", "Mexico", "Australia",
]
UNLABELED_STATUSES = ["suspected", "Under investigation", "probable"]


def draw_tokens(rng: np.random.Generator, rates: dict[str, float]) -> list[str]:
    present = [t for t in TOKENS if rng.random() < rates.get(t, BACKGROUND)]
    return present


def add_noise(rng: np.random.Generator, token: str) -> str:
    styled = token
    roll = rng.random()
    if roll < 0.12:
        styled = styled.title()
    elif roll < 0.22:
        styled = styled.capitalize()
    if rng.random() < 0.05:
        styled = styled.replace(" ", "  ", 1)
    if rng.random() < 0.04:
        styled = f"'{styled}'"
    if rng.random() < 0.06:
        styled = f" {styled}"
    return styled


def render_row(rng: np.random.Generator, tokens: list[str]) -> str:
    sep = "; " if rng.random() < 0.7 else ", "
    return sep.join(add_noise(rng, t) for t in tokens)


def main() -> None:
    rng = np.random.default_rng(SEED)
    rows: list[tuple[str, str, str, str]] = []

    for label, count in ((1, N_POSITIVE), (0, N_NEGATIVE)):
        rates = POSITIVE_RATES if label == 1 else NEGATIVE_RATES
        status_pool = ["confirmed", "Confirmed"] if label == 1 else ["discarded", "Discarded"]
        for _ in range(count):
            tokens = draw_tokens(rng, rates)
            country = COUNTRIES[int(rng.integers(len(COUNTRIES)))]
            date = f"2022-{int(rng.integers(5, 10)):02d}-{int(rng.integers(1, 29)):02d}"
            status = status_pool[int(rng.integers(len(status_pool)))]
            rows.append((country, date, render_row(rng, tokens), status))

    # rows the ingest step must drop: unlabeled or blank statuses
    for status in UNLABELED_STATUSES + UNLABELED_STATUSES[:3] + [""]:
        tokens = draw_tokens(rng, NEGATIVE_RATES)
        rows.append(("Unknown", "2022-07-01", render_row(rng, tokens), status))

    # guarantee every canonical token appears in at least one labeled row
    labeled = [i for i, r in enumerate(rows) if r[3].lower() in ("confirmed", "discarded")]
    seen: set[str] = set()
    for i in labeled:
        seen |= {t.strip().strip("'‘’“”\"").lower().replace("  ", " ").strip()
                 for t in rows[i][2].replace(";", ",").split(",")}
    for token in TOKENS:
        if token not in seen:
            i = labeled[int(rng.integers(len(labeled)))]
            country, date, symptoms, status = rows[i]
            rows[i] = (country, date, f"{symptoms}; {token}" if symptoms else token, status)

    order = rng.permutation(len(rows))
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["Country", "Date_confirmation", "Symptoms", "Status"])
        for i in order:
            writer.writerow(rows[i])
    print(f"wrote {OUT} ({len(rows)} data rows)")


if __name__ == "__main__":
    main()
