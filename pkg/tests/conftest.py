"""Shared fixtures: a 10-document tagged corpus with 2 defective papers, a
small abstract+citations auxiliary corpus, and augmentation resources."""

import pytest

from summkit.corpus import SUMMARY_SUFFIX


def tagged_paper(title, sections):
    """Render a paper in the marker-line corpus format."""
    lines = ["TITLE", "", "PARAGRAPH", "", title, ""]
    for heading, paragraphs in sections:
        lines += ["SECTION", "", heading, ""]
        for paragraph in paragraphs:
            lines += ["PARAGRAPH", "", paragraph, ""]
    return "\n".join(lines) + "\n"


# 10 papers: p03 lacks an Abstract, p07 lacks an Introduction (the two
# outliers); p02 and p05 lack a Conclusion.
PAPERS = {
    "p00": (
        "Measuring reaction rates in soft matter",
        [
            ("Abstract", [
                "We measure reaction rates in soft matter systems. "
                "Rates depend strongly on temperature gradients. "
                "Our protocol reduces measurement noise.",
            ]),
            ("Introduction", [
                "Reaction rates govern many physical processes. "
                "Previous protocols suffered from instrument noise.",
                "We revisit the measurement problem with new tooling.",
            ]),
            ("Conclusion", [
                "Temperature gradients dominate soft matter reaction rates.",
            ]),
        ],
        "Reaction rates in soft matter depend on temperature gradients. "
        "A careful protocol reduces measurement noise.",
    ),
    "p01": (
        "Wide-field surveys of dwarf galaxies",
        [
            ("ABSTRACT", [
                "We survey dwarf galaxies across a wide field. "
                "The survey doubles the known population. "
                "Faint satellites cluster around massive hosts.",
            ]),
            ("Introduction", [
                "Dwarf galaxies trace dark matter halos. "
                "Counting them constrains formation models.",
                "Earlier surveys covered narrow fields only.",
            ]),
            ("Conclusion", [
                "Wide fields reveal faint satellites around massive hosts.",
            ]),
        ],
        "A wide-field survey doubles the known dwarf galaxy population and "
        "finds faint satellites around massive hosts.",
    ),
    "p02": (
        "Grid storage with reused batteries",
        [
            ("Abstract", [
                "Reused electric vehicle batteries can buffer grid storage. "
                "Capacity fade stays below twenty percent over five years.",
            ]),
            ("Introduction", [
                "Grid storage demand grows with renewable generation. "
                "Battery reuse cuts storage cost sharply.",
                "We model fleets of retired packs under realistic load.",
            ]),
        ],
        "Reused vehicle batteries buffer grid storage with low capacity fade.",
    ),
    "p03": (
        "Folding pathways of membrane proteins",
        [
            ("Introduction", [
                "Membrane proteins fold inside lipid bilayers. "
                "Their pathways resist direct observation.",
                "We simulate folding with coarse-grained models.",
            ]),
            ("Conclusion", [
                "Coarse-grained models expose folding intermediates.",
            ]),
        ],
        "Coarse-grained simulation exposes folding intermediates of membrane proteins.",
    ),
    "p04": (
        "Mapping urban noise with mobile sensors",
        [
            ("Abstract", [
                "Mobile sensors map urban noise at street resolution. "
                "Night traffic dominates residential exposure.",
            ]),
            ("Introduction", [
                "Urban noise harms health outcomes. "
                "Fixed stations miss street level variation.",
                "Our fleet of mobile sensors samples every block hourly.",
            ]),
            ("Conclusion", [
                "Street resolution maps show night traffic dominates exposure.",
            ]),
        ],
        "Mobile sensors map urban noise and show night traffic dominates "
        "residential exposure.",
    ),
    "p05": (
        "Thermal tolerance in reef corals",
        [
            ("Abstract", [
                "Reef corals vary widely in thermal tolerance. "
                "Symbiont type predicts bleaching resistance.",
            ]),
            ("Introduction", [
                "Coral bleaching follows marine heat waves. "
                "Tolerant colonies may seed reef recovery.",
                "We assay colonies across three lagoon sites.",
            ]),
        ],
        "Symbiont type predicts bleaching resistance across reef corals.",
    ),
    "p06": (
        "Fuzzing compilers with grammar mutations",
        [
            ("Abstract", [
                "Grammar mutations fuzz compilers effectively. "
                "Our fuzzer found forty miscompilation bugs. "
                "Coverage guided mutation beats random sampling.",
            ]),
            ("1 Introduction", [
                "Compilers must not miscompile programs. "
                "Random fuzzing wastes effort on invalid inputs.",
                "Grammar aware mutation keeps inputs valid.",
            ]),
            ("Conclusion", [
                "Coverage guided grammar mutation exposes deep compiler bugs.",
            ]),
        ],
        "Coverage guided grammar mutation fuzzing found forty compiler bugs.",
    ),
    "p07": (
        "Seasonal melt of alpine glaciers",
        [
            ("Abstract", [
                "Alpine glaciers lose mass every recorded season. "
                "Melt accelerates above the equilibrium line.",
            ]),
            ("Conclusion", [
                "Seasonal melt now outpaces winter accumulation.",
            ]),
        ],
        "Alpine glacier melt accelerates and outpaces winter accumulation.",
    ),
    "p08": (
        "Sleep regularity and learning outcomes",
        [
            ("Abstract", [
                "Sleep regularity predicts learning outcomes in students. "
                "Irregular schedules impair recall the following week.",
            ]),
            ("Introduction", [
                "Sleep supports memory consolidation. "
                "Schedule regularity is rarely measured directly.",
                "We track four hundred students with wearable loggers.",
            ]),
            ("2. Conclusion", [
                "Regular sleep schedules improve recall in students.",
            ]),
        ],
        "Regular sleep schedules predict better recall in students.",
    ),
    "p09": (
        "Tracking semantic drift in loanwords",
        [
            ("Abstract", [
                "Loanwords drift semantically after adoption. "
                "Drift speed correlates with usage frequency.",
            ]),
            ("Introduction", [
                "Languages borrow words constantly. "
                "Borrowed meanings rarely stay fixed.",
                "We trace drift across two centuries of newspaper text.",
            ]),
            ("Conclusion", [
                "Frequent loanwords drift fastest in meaning.",
            ]),
        ],
        "Semantic drift of loanwords correlates with usage frequency.",
    ),
}

OUTLIER_IDS = frozenset({"p03", "p07"})
NON_OUTLIER_IDS = tuple(sorted(set(PAPERS) - OUTLIER_IDS))


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("laysumm")
    for doc_id, (title, sections, summary) in PAPERS.items():
        (root / f"{doc_id}.txt").write_text(tagged_paper(title, sections), encoding="utf-8")
        (root / f"{doc_id}{SUMMARY_SUFFIX}").write_text(summary, encoding="utf-8")
    return root


@pytest.fixture(scope="session")
def scisumm_dir(tmp_path_factory):
    """10 abstract+citations samples, mirroring the auxiliary corpus layout."""
    root = tmp_path_factory.mktemp("scisumm")
    topics = [
        "parsing", "alignment", "tagging", "discourse", "grounding",
        "induction", "generation", "retrieval", "entailment", "segmentation",
    ]
    for i, topic in enumerate(topics):
        sample_id = f"s{i:02d}"
        (root / f"{sample_id}.abstract.txt").write_text(
            f"This paper studies {topic} with neural models. "
            f"Results on {topic} benchmarks improve over strong baselines.",
            encoding="utf-8",
        )
        (root / f"{sample_id}.citations.txt").write_text(
            f"Later work applied the {topic} model to new domains.\n"
            f"The {topic} benchmark results were widely reproduced.\n",
            encoding="utf-8",
        )
        (root / f"{sample_id}{SUMMARY_SUFFIX}").write_text(
            f"Neural models improve {topic} benchmarks over strong baselines.",
            encoding="utf-8",
        )
    return root


@pytest.fixture(scope="session")
def resources_dir(tmp_path_factory):
    """Synonym lexicon + embedding table covering fixture corpus vocabulary."""
    root = tmp_path_factory.mktemp("resources")
    (root / "lexicon.tsv").write_text(
        "measure\tgauge\n"
        "noise\tclamor\n"
        "survey\tcensus\n"
        "storage\treserve\n"
        "mobile\tportable\n"
        "tolerance\tresilience\n"
        "mutation\tvariation\n"
        "melt\tthaw\n"
        "sleep\trest\n"
        "drift\tshift\n"
        "rates\tspeeds\n"
        "students\tlearners\n",
        encoding="utf-8",
    )
    (root / "embeddings.txt").write_text(
        "glaciers 0.9 0.1 0.0\n"
        "ice 0.85 0.15 0.0\n"
        "corals 0.1 0.9 0.0\n"
        "reef 0.12 0.88 0.0\n"
        "galaxies 0.0 0.1 0.9\n"
        "stars 0.0 0.12 0.88\n"
        "batteries 0.5 0.5 0.0\n"
        "packs 0.48 0.52 0.0\n",
        encoding="utf-8",
    )
    return root
