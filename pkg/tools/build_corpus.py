#!/usr/bin/env python3
"""Assemble the training corpus under data/corpus/.

Ransom notes are synthesized from family-style templates (payment demands,
deadline threats, contact blocks with wallet/onion/email strings) the way
real families stamp out near-identical notes with per-victim IDs. Benign
documents cover news articles, project READMEs, and source files, and
deliberately include hard negatives: security news about ransomware
incidents, cryptocurrency wallet documentation, and encryption library
code. Everything derives from one fixed seed so the corpus is reproducible
byte for byte; the generated files are committed, this script only needs
rerunning if the banks below change.

No functional malware is produced anywhere: notes are detection-training
text only.
"""

from __future__ import annotations

import argparse
import random
import shutil
from pathlib import Path

MASTER_SEED = 20260815
RANSOM_COUNT = 177
NEWS_COUNT = 150
README_COUNT = 50
CODE_COUNT = 27

BTC_ADDRESSES = [
    "1BoatSLRHtKNngkdXEeobR76b53LETtpyT",
    "1Mz7153HMuxXTuR2R1t78mGSdzaAtNbBWX",
    "3J98t1WpEZ73CNmQviecrnyiWrnqRhWNLy",
    "1F1tAaz5x1HUXrCNLbtMDqcw6o5GNn4xqX",
    "bc1qar0srrr7xfkvy5l643lydnw9re59gtzzwf5mdq",
    "bc1qw508d6qejxtdg4y5r3zarvary0c5xw7kv8f3t4",
    "15ubicBBWFnvoZLT7GiU2qxjRaKJPdkDMG",
    "1JryTePceSiWVpoNBU8SbwiT7J4ghzijzW",
]
XMR_ADDRESSES = [
    "44AFFq5kSiGBoZ4NMDwYtN18obc8AemS33DBLWs3H7otXft3XjrpDtQGv7SqSsaBYBb98uNbr2VBBEt7f2wfn3RVGQBEP3A",
    "48daf1rG3hE1Txapcsxh6WXNe9MLNKtu7W7tKTivtSoVLHErYzvdcpea2nSTgGkz66RFP4GKVAsTV14v6G3oddBTHfxP6tU",
]
CONTACT_EMAILS = [
    "datarestore@securemail.example",
    "unlock2026@protonmail.example",
    "filehelp@tutanota.example",
    "decryptor.support@onionmail.example",
    "recovery.team@airmail.example",
    "masterkey@cock.example",
]
ONION_URLS = [
    "http://p27dokhpz2n7nvgr.onion/id/",
    "http://gandcrabmfe6mnef.onion/ticket/",
    "http://lockbitsupp7a2m4.onion/chat/",
    "http://restoredata4u5kq.onion/portal/",
]
TELEGRAM_HANDLES = ["@restore_helper", "@unlock_desk", "@datarecovery_ops"]
CIPHER_NAMES = ["RSA-2048", "AES-256", "RSA-4096 and AES-128", "ChaCha20", "Salsa20"]
DEADLINES = ["48 hours", "72 hours", "3 days", "5 days", "7 days", "one week"]
AMOUNTS = ["0.05", "0.12", "0.3", "0.5", "0.75", "1.2", "2", "980 USD worth of"]
EXTENSIONS = [".crypted", ".locked", ".enc", ".pay2unlock", ".zzz", ".ghost"]
GROUP_NAMES = ["Shadow Vault", "Iron Cipher", "Night Locker", "Crimson Key", "Silent Padlock"]


def _victim_id(rng: random.Random) -> str:
    return "".join(rng.choice("0123456789ABCDEF") for _ in range(12))


def note_family_qna(rng: random.Random) -> str:
    """Question-and-answer layout in the WannaCry tradition."""
    parts = [
        "What happened to my computer?",
        "Your important files are encrypted. Your documents, photos, videos, databases "
        f"and other files are no longer accessible because they have been encrypted with {rng.choice(CIPHER_NAMES)}. "
        "Maybe you are busy looking for a way to recover your files, but do not waste your time. "
        "Nobody can recover your files without our decryption service.",
        "",
        "Can I recover my files?",
        "Sure. We guarantee that you can recover all your files safely and easily. "
        f"But you have not so much time. You can decrypt some of your files for free as a test. "
        f"If you want to decrypt all your files, you need to pay {rng.choice(AMOUNTS)} bitcoin.",
        "",
        "How do I pay?",
        f"Payment is accepted in Bitcoin only. Send the correct amount to the address below "
        f"and then send your personal ID to our email {rng.choice(CONTACT_EMAILS)}.",
        "",
        f"Bitcoin address: {rng.choice(BTC_ADDRESSES)}",
        f"Your personal ID: {_victim_id(rng)}",
    ]
    if rng.random() < 0.5:
        parts += ["", f"If payment is not made within {rng.choice(DEADLINES)}, the price will be doubled."]
    return "\n".join(parts) + "\n"


def note_family_caps(rng: random.Random) -> str:
    """Short, loud, all-capitals demand."""
    lines = [
        "!!! ATTENTION !!!",
        "",
        "ALL YOUR FILES HAVE BEEN ENCRYPTED!",
        f"YOUR DOCUMENTS PHOTOS DATABASES AND OTHER IMPORTANT FILES NOW HAVE THE EXTENSION {rng.choice(EXTENSIONS).upper()}",
        "DO NOT TRY TO DECRYPT THEM YOURSELF OR YOU WILL LOSE THEM FOREVER!",
        "",
        f"TO GET THE DECRYPT TOOL YOU MUST PAY {rng.choice(AMOUNTS).upper()} BTC",
        f"WALLET: {rng.choice(BTC_ADDRESSES)}",
        f"AFTER PAYMENT WRITE TO: {rng.choice(CONTACT_EMAILS).upper()}",
        f"YOUR ID: {_victim_id(rng)}",
    ]
    if rng.random() < 0.4:
        lines += ["", f"YOU HAVE {rng.choice(DEADLINES).upper()} OR YOUR FILES WILL BE DELETED PERMANENTLY!"]
    return "\n".join(lines) + "\n"


def note_family_corporate(rng: random.Random) -> str:
    """Double-extortion letter aimed at an organization."""
    group = rng.choice(GROUP_NAMES)
    parts = [
        f"Greetings from the {group} team.",
        "",
        "Your corporate network has been penetrated and audited. All essential files on your "
        "servers and workstations have been encrypted, and more than "
        f"{rng.randrange(40, 900)} GB of confidential data (contracts, accounting, HR records, "
        "customer databases) has been downloaded to our secure storage.",
        "",
        "If you refuse to cooperate, the stolen data will be published on our leak portal and "
        "sold to interested parties. If you cooperate, the data will be wiped, the decryption "
        "software will be provided, and we will explain how we got in.",
        "",
        f"Contact us within {rng.choice(DEADLINES)} through our portal: {rng.choice(ONION_URLS)}{_victim_id(rng)}",
        f"Backup contact: {rng.choice(CONTACT_EMAILS)}",
        "",
        "Do not involve the police or recovery companies. Do not attempt to modify or rename "
        "encrypted files. Any such attempt will make decryption impossible.",
    ]
    if rng.random() < 0.5:
        parts += ["", f"As a goodwill gesture we will decrypt {rng.randrange(2, 4)} files of your choice for free."]
    return "\n".join(parts) + "\n"


def note_family_steps(rng: random.Random) -> str:
    """Numbered recovery instructions."""
    onion = rng.choice(ONION_URLS)
    parts = [
        "Your files are encrypted and currently unavailable.",
        f"All files on this computer now have the extension {rng.choice(EXTENSIONS)}.",
        "The only way to get them back is to follow these instructions exactly:",
        "",
        "1. Download and install the Tor Browser from the official site.",
        f"2. Open this link in the Tor Browser: {onion}{_victim_id(rng)}",
        "3. Enter your personal decryption ID shown below.",
        f"4. Pay {rng.choice(AMOUNTS)} BTC to the wallet shown on the page.",
        "5. Download your decryptor and follow the manual.",
        "",
        f"Personal decryption ID: {_victim_id(rng)}",
    ]
    if rng.random() < 0.6:
        parts += ["", f"Support email if the page is down: {rng.choice(CONTACT_EMAILS)}"]
    if rng.random() < 0.4:
        parts += ["", "Warning: antivirus software may remove this note but it cannot restore your files."]
    return "\n".join(parts) + "\n"


def note_family_minimal(rng: random.Random) -> str:
    """Terse one-paragraph note, a few lines only."""
    lines = [
        "all your data has been locked us",
        "you want to return?",
        f"write email {rng.choice(CONTACT_EMAILS)} or telegram {rng.choice(TELEGRAM_HANDLES)}",
        f"your id {_victim_id(rng)}",
    ]
    if rng.random() < 0.5:
        lines.insert(2, f"price {rng.choice(AMOUNTS)} btc wallet {rng.choice(BTC_ADDRESSES)}")
    return "\n".join(lines) + "\n"


def note_family_banner(rng: random.Random) -> str:
    """Banner-framed note with a technical flavor."""
    bar = "=" * 54
    parts = [
        bar,
        f"          {rng.choice(GROUP_NAMES).upper()} RANSOMWARE",
        bar,
        "",
        f"Your network has been encrypted with {rng.choice(CIPHER_NAMES)}.",
        "Backups were located and deleted. Shadow copies were purged.",
        "Every encrypted file carries a unique key protected by our master key.",
        "",
        "To purchase the decryption software:",
        f"  - transfer {rng.choice(AMOUNTS)} BTC to {rng.choice(BTC_ADDRESSES)}",
        f"  - email the transaction id and your ID to {rng.choice(CONTACT_EMAILS)}",
        f"  - or open {rng.choice(ONION_URLS)}{_victim_id(rng)} in Tor",
        "",
        f"ID: {_victim_id(rng)}",
        bar,
    ]
    if rng.random() < 0.5:
        parts.insert(7, "Attempting recovery with third party tools corrupts the key blocks permanently.")
    return "\n".join(parts) + "\n"


def note_family_apology(rng: random.Random) -> str:
    """Soft-spoken scam tone: reassurance plus the same demand."""
    parts = [
        "Hello, unfortunately your files have been encrypted.",
        "",
        "Do not worry, your files are safe and nothing has been deleted. We are a professional "
        "team and we always restore the data of clients who pay. Consider this a forced purchase "
        "of our security audit.",
        "",
        f"The price for decryption of the whole machine is {rng.choice(AMOUNTS)} bitcoin. "
        f"You can send {rng.randrange(1, 3)} small files to us and we will decrypt them for free "
        "so you can see that recovery works.",
        "",
        f"Our email: {rng.choice(CONTACT_EMAILS)}",
        f"Bitcoin wallet for payment: {rng.choice(BTC_ADDRESSES)}",
        f"Your personal reference number: {_victim_id(rng)}",
        "",
        f"Please contact us within {rng.choice(DEADLINES)}. After that the master key is erased "
        "from our server automatically and nobody will be able to help you.",
    ]
    return "\n".join(parts) + "\n"


def note_family_monero(rng: random.Random) -> str:
    """Monero-demanding variant without bitcoin strings."""
    parts = [
        "YOUR SYSTEM IS LOCKED.",
        "",
        f"Files were encrypted using {rng.choice(CIPHER_NAMES)} with a per-machine key.",
        "We do not use bitcoin. Payment is accepted only in Monero (XMR) because your safety "
        "is our safety.",
        "",
        f"Amount: the equivalent of {rng.randrange(300, 2600)} USD in XMR",
        f"Monero address: {rng.choice(XMR_ADDRESSES)}",
        f"Proof of payment goes to: {rng.choice(CONTACT_EMAILS)}",
        "",
        f"Machine token: {_victim_id(rng)}",
        "Decryption is delivered automatically within 2 hours of 1 network confirmation.",
    ]
    if rng.random() < 0.5:
        parts += ["", f"Unpaid machines are wiped after {rng.choice(DEADLINES)}."]
    return "\n".join(parts) + "\n"


NOTE_FAMILIES = [
    note_family_qna,
    note_family_caps,
    note_family_corporate,
    note_family_steps,
    note_family_minimal,
    note_family_banner,
    note_family_apology,
    note_family_monero,
]


# --------------------------------------------------------------------------
# Benign: news-style articles.

NEWS_TOPICS = {
    "city": {
        "subjects": ["the city council", "the transit authority", "the mayor's office",
                     "the parks department", "the school board"],
        "verbs": ["approved", "postponed", "unveiled", "debated", "rejected"],
        "objects": ["a plan to repave the riverside corridor",
                    "the expansion of the downtown bike network",
                    "next year's library budget",
                    "a proposal for a new community center",
                    "revised zoning rules for the harbor district"],
        "closers": ["A public hearing is scheduled for next month.",
                    "Residents can submit comments through the city portal.",
                    "Construction is expected to begin in the spring.",
                    "Officials said funding remains the main obstacle."],
    },
    "science": {
        "subjects": ["researchers at the coastal institute", "a team of astronomers",
                     "marine biologists", "climate scientists", "a graduate-led survey"],
        "verbs": ["reported", "published findings showing", "confirmed", "measured", "catalogued"],
        "objects": ["a steady decline in seagrass coverage along the estuary",
                    "an unusually bright supernova in a nearby galaxy",
                    "new migration routes for tagged bluefin tuna",
                    "record snowpack variability across the range",
                    "a previously undescribed species of cave beetle"],
        "closers": ["The study appears in this week's issue of the journal.",
                    "Further observations are planned for the autumn.",
                    "The dataset has been released for public analysis.",
                    "Peer reviewers called the method rigorous and repeatable."],
    },
    "sports": {
        "subjects": ["the home side", "the visiting squad", "the league leaders",
                     "the newly promoted club", "the under-21 team"],
        "verbs": ["edged", "thrashed", "held", "stunned", "outlasted"],
        "objects": ["their rivals two to one in added time",
                    "the defending champions in a penalty shootout",
                    "a ten-man opposition to a goalless draw",
                    "the table toppers with a late header",
                    "their opponents across five grueling sets"],
        "closers": ["The coach praised the defense in the post-match interview.",
                    "Attendance broke the season record.",
                    "The return fixture is set for the end of the month.",
                    "Two starters left the pitch with minor injuries."],
    },
    "business": {
        "subjects": ["the regional grocer", "a midsize logistics firm", "the ferry operator",
                     "a family-owned printing company", "the cooperative bank"],
        "verbs": ["announced", "reported", "forecast", "disclosed", "celebrated"],
        "objects": ["quarterly revenue slightly ahead of expectations",
                    "a merger with its largest supplier",
                    "plans to hire eighty seasonal workers",
                    "a modest dip in freight volumes",
                    "an overhaul of its booking servers after weekend outages",
                    "a new client portal for freight tracking",
                    "its fiftieth year of continuous operation"],
        "closers": ["Shares in the parent group were unchanged.",
                    "Analysts called the outlook cautious but credible.",
                    "The board will vote on the proposal in June.",
                    "Client accounts were migrated to the new servers overnight.",
                    "Union representatives welcomed the announcement."],
    },
    "weather": {
        "subjects": ["forecasters", "the national weather service", "storm trackers",
                     "the regional observatory", "emergency planners"],
        "verbs": ["warned of", "predicted", "tracked", "downgraded", "issued advisories for"],
        "objects": ["a slow-moving front bringing heavy rain to the valley",
                    "gusts approaching gale force along the headlands",
                    "an early heat spell across the interior plains",
                    "patchy overnight frost in low-lying fields",
                    "a band of lake-effect snow north of the ridge"],
        "closers": ["Conditions are expected to ease by the weekend.",
                    "Drivers were urged to allow extra travel time.",
                    "River levels remain below flood stage.",
                    "A follow-up bulletin is due at six."],
    },
}

SECURITY_NEWS_SENTENCES = [
    "A regional hospital network said on Tuesday it was recovering from a ransomware attack "
    "that forced staff back to paper records for two days.",
    "Investigators said the attackers demanded payment in bitcoin, which the hospital declined "
    "on the advice of federal authorities.",
    "The school district confirmed that encrypted servers were restored from offline backups "
    "and that no ransom was paid.",
    "Security researchers attributed the incident to a known criminal group that typically "
    "leaves a ransom note named readme on infected machines.",
    "Officials emphasized that patching internet-facing systems and keeping tested backups "
    "remain the most effective defenses against extortion campaigns.",
    "The company said customer data does not appear to have been exfiltrated, and that "
    "decryption of affected volumes is proceeding slowly.",
    "Analysts noted a decline in average ransom payments this quarter as more victims resist "
    "negotiating with operators.",
    "The advisory recommends monitoring for mass file creation and unexpected encryption "
    "activity as early indicators of compromise.",
    "A spokesperson for the insurer said claims related to data extortion doubled over the "
    "previous year.",
    "Law enforcement seized infrastructure used to host leak sites and recovered a number of "
    "decryption keys.",
]


def gen_news(rng: random.Random, doc_index: int) -> str:
    if doc_index % 15 == 7:
        # Hard negatives: security reporting shares surface vocabulary with
        # ransom notes (ransom, bitcoin, encrypted) in a journalistic register.
        count = rng.randrange(6, 10)
        body = rng.sample(SECURITY_NEWS_SENTENCES, count)
        headline = rng.choice([
            "Hospital network restores systems after ransomware incident",
            "School district rebuffs extortion demand, restores from backups",
            "Insurer reports rise in data extortion claims",
            "Agencies publish guidance after wave of encryption attacks",
        ])
        return headline + "\n\n" + " ".join(body) + "\n"
    topic = NEWS_TOPICS[rng.choice(sorted(NEWS_TOPICS))]
    sentences = []
    for _ in range(rng.randrange(6, 13)):
        sentences.append(
            f"{rng.choice(topic['subjects']).capitalize()} {rng.choice(topic['verbs'])} "
            f"{rng.choice(topic['objects'])}."
        )
        if rng.random() < 0.35:
            sentences.append(rng.choice(topic["closers"]))
    headline = sentences[0].rstrip(".")
    return headline + "\n\n" + " ".join(sentences) + "\n"


# --------------------------------------------------------------------------
# Benign: README-style documents.

PROJECT_NAMES = [
    "logsift", "quicktable", "fernmap", "driftdb", "plumber", "hexlace", "tinyroute",
    "saltmarsh", "gridwalk", "paperclip-sync", "lanternfs", "mosspack", "kettle",
    "windrose", "cobbleb", "stonearc", "rushlight", "emberlog", "bluegate", "ashfork",
]
README_DESCRIPTIONS = [
    "a streaming log filter with a tiny expression language",
    "an in-memory columnar table for quick aggregations",
    "a topographic map renderer for hiking datasets",
    "an embedded key-value store with snapshot isolation",
    "a composable shell pipeline runner",
    "a hex viewer with structure templates",
    "a static route planner for container networks",
    "a tide and current prediction toolkit",
    "a pathfinding playground for grid worlds",
    "a two-way folder synchronizer with conflict journals",
    "a tiny static file server with directory listings",
    "a retrying metrics client with batched uploads",
]
LICENSES = ["MIT", "Apache-2.0", "BSD-3-Clause", "MPL-2.0"]

CRYPTO_README_BODIES = [
    (
        "## Wallet basics\n\n"
        "This library generates hierarchical deterministic wallets. A wallet address such as "
        "a bech32 string is derived from your seed phrase; never share the seed. Bitcoin "
        "transactions are signed offline and broadcast through any public node.\n\n"
        "## Backup\n\n"
        "Write the twelve words down on paper. Anyone holding them can spend your bitcoin. "
        "The library never transmits key material.\n"
    ),
    (
        "## Overview\n\n"
        "A small authenticated encryption toolkit. Files are encrypted with AES-256-GCM using "
        "a key derived via scrypt from your passphrase. Decryption verifies the tag before "
        "writing a single byte of plaintext.\n\n"
        "## Threat model\n\n"
        "Protects data at rest. If you lose the passphrase the data cannot be decrypted; there "
        "is no recovery service and no backdoor.\n"
    ),
    (
        "## Incident response runbook\n\n"
        "1. Isolate the affected host from the network.\n"
        "2. Capture a memory image before shutdown.\n"
        "3. Preserve any ransom note files for the forensics team; do not open attachments.\n"
        "4. Restore from the most recent verified backup.\n"
        "5. Rotate credentials that may have been exposed.\n\n"
        "Paying extortion demands is strongly discouraged; contact the response retainer first.\n"
    ),
]


def gen_readme(rng: random.Random, doc_index: int) -> str:
    if doc_index % 17 == 5:
        name = rng.choice(["coldkey", "lockbox", "vaultpaper", "ir-playbook"])
        return f"# {name}\n\n" + rng.choice(CRYPTO_README_BODIES)
    name = rng.choice(PROJECT_NAMES)
    desc = rng.choice(README_DESCRIPTIONS)
    tool = rng.choice(["pip install", "npm install", "cargo add", "go get"])
    sections = [f"# {name}\n\n{name} is {desc}.\n"]
    sections.append(
        "## Installation\n\n```\n"
        f"{tool} {name}\n```\n"
    )
    sections.append(
        "## Usage\n\n```\n"
        f"{name} --input data/{rng.choice(['sample', 'demo', 'fixtures'])}."
        f"{rng.choice(['csv', 'json', 'log'])} --output out/\n```\n\n"
        "Input files are read once and results stream to the output directory. "
        "Corrupt files are skipped with a warning instead of aborting the run.\n"
    )
    if rng.random() < 0.7:
        sections.append(
            "## Configuration\n\n"
            f"Settings live in `{name}.toml`. The `{rng.choice(['threads', 'cache_mb', 'verbosity'])}` "
            "key is the one most installations tune. Defaults are chosen for laptops.\n"
        )
    if rng.random() < 0.6:
        sections.append(
            "## Testing\n\n"
            "Run the suite with `make test`. Integration tests need a scratch directory and "
            "about a minute.\n"
        )
    if rng.random() < 0.5:
        sections.append(
            "## Deployment\n\n"
            f"The {name} server listens on port {rng.choice(['8080', '9090', '3000'])} behind a "
            "reverse proxy. Clients reconnect with exponential backoff; a single server instance "
            "comfortably handles a few hundred idle clients.\n"
        )
    if rng.random() < 0.5:
        sections.append(
            "## Contributing\n\n"
            "Issues and pull requests are welcome. Please run the formatter before submitting "
            "and add a changelog entry for user-visible changes.\n"
        )
    sections.append(f"## License\n\n{rng.choice(LICENSES)}\n")
    return "\n".join(sections)


# --------------------------------------------------------------------------
# Benign: source files.

PY_TEMPLATE = '''"""{purpose}."""

import json
import sys
from pathlib import Path


def load_records(path):
    """Read newline-delimited records, skipping blanks."""
    records = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        records.append(json.loads(line))
    return records


def summarize(records, key="{key}"):
    totals = {{}}
    for record in records:
        bucket = record.get(key, "unknown")
        totals[bucket] = totals.get(bucket, 0) + 1
    return dict(sorted(totals.items()))


def main(argv):
    if len(argv) != 2:
        print("usage: {name}.py <records.jsonl>", file=sys.stderr)
        return 2
    totals = summarize(load_records(argv[1]))
    for bucket, count in totals.items():
        print(f"{{bucket}}\\t{{count}}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
'''

C_TEMPLATE = '''/* {purpose}. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#define MAX_LINE 4096

static int count_{name}(FILE *fp) {{
    char line[MAX_LINE];
    int total = 0;
    while (fgets(line, sizeof line, fp)) {{
        if (strchr(line, '{ch}'))
            total++;
    }}
    return total;
}}

int main(int argc, char **argv) {{
    if (argc != 2) {{
        fprintf(stderr, "usage: %s <file>\\n", argv[0]);
        return 2;
    }}
    FILE *fp = fopen(argv[1], "r");
    if (!fp) {{
        perror("fopen");
        return 1;
    }}
    printf("%d\\n", count_{name}(fp));
    fclose(fp);
    return 0;
}}
'''

JS_TEMPLATE = '''// {purpose}.
// Walks the tree under the given root and collects matching files.
// Hidden directories are skipped; symlinks are not followed, so loops in
// the checkout cannot wedge the scan.
const fs = require("fs");
const path = require("path");

function walk(dir, out = []) {{
  for (const entry of fs.readdirSync(dir, {{ withFileTypes: true }})) {{
    const full = path.join(dir, entry.name);
    if (entry.isDirectory()) walk(full, out);
    else if (full.endsWith(".{ext}")) out.push(full);
  }}
  return out;
}}

function main() {{
  const root = process.argv[2] || ".";
  const files = walk(root);
  console.log(`found ${{files.length}} {ext} files under ${{root}}`);
  for (const file of files.slice(0, 20)) console.log(" ", file);
}}

main();
'''

MAKE_TEMPLATE = '''# Build rules for the {name} tool.
CC ?= cc
CFLAGS ?= -O2 -Wall -Wextra
OBJ = main.o util.o table.o

all: {name}

{name}: $(OBJ)
\t$(CC) $(CFLAGS) -o $@ $(OBJ)

%.o: %.c {name}.h
\t$(CC) $(CFLAGS) -c $<

clean:
\trm -f {name} $(OBJ)

.PHONY: all clean
'''

CRYPTO_PY = '''"""Thin wrapper around a symmetric file encryption primitive."""

import hashlib
import os


def derive_key(passphrase: bytes, salt: bytes, rounds: int = 200_000) -> bytes:
    """PBKDF2-HMAC-SHA256 key derivation with a per-file salt."""
    return hashlib.pbkdf2_hmac("sha256", passphrase, salt, rounds, dklen=32)


def encrypt_bytes(data: bytes, key: bytes) -> bytes:
    """Keystream XOR for test fixtures only; not authenticated."""
    stream = hashlib.sha256(key).digest()
    out = bytearray()
    for i, b in enumerate(data):
        if i % 32 == 0 and i:
            stream = hashlib.sha256(stream).digest()
        out.append(b ^ stream[i % 32])
    return bytes(out)


def encrypt_file(src, dst, passphrase: str) -> None:
    salt = os.urandom(16)
    key = derive_key(passphrase.encode(), salt)
    payload = encrypt_bytes(open(src, "rb").read(), key)
    with open(dst, "wb") as fh:
        fh.write(salt + payload)
'''


def gen_code(rng: random.Random, doc_index: int) -> tuple[str, str]:
    purposes = [
        "Aggregate record counts by a key column",
        "Validate export batches before upload",
        "Collect nightly job statistics",
        "Summarize client sessions per upstream server",
        "Roll up sensor readings per station",
    ]
    kind = doc_index % 5
    if kind == 0:
        name = rng.choice(["tally", "rollup", "census", "bucket"])
        return f"{name}.py", PY_TEMPLATE.format(
            purpose=rng.choice(purposes), key=rng.choice(["status", "region", "kind"]), name=name
        )
    if kind == 1:
        name = rng.choice(["lines", "marks", "hits"])
        return f"{name}.c", C_TEMPLATE.format(
            purpose=rng.choice(purposes), name=name, ch=rng.choice(";#@")
        )
    if kind == 2:
        ext = rng.choice(["md", "ts", "css"])
        return f"scan_{ext}.js", JS_TEMPLATE.format(purpose=rng.choice(purposes), ext=ext)
    if kind == 3:
        name = rng.choice(["hexlace", "gridwalk", "kettle"])
        return f"Makefile_{name}", MAKE_TEMPLATE.format(name=name)
    # Hard negative: legitimate encryption utility code.
    return "fixture_cipher.py", CRYPTO_PY


# --------------------------------------------------------------------------


def build(root: Path) -> None:
    ransom_dir = root / "ransom"
    benign_dir = root / "benign"
    if root.exists():
        shutil.rmtree(root)
    ransom_dir.mkdir(parents=True)
    benign_dir.mkdir(parents=True)

    for i in range(RANSOM_COUNT):
        rng = random.Random(f"{MASTER_SEED}:ransom:{i}")
        family = NOTE_FAMILIES[i % len(NOTE_FAMILIES)]
        (ransom_dir / f"note_{i:03d}.txt").write_text(family(rng), encoding="utf-8")

    for i in range(NEWS_COUNT):
        rng = random.Random(f"{MASTER_SEED}:news:{i}")
        (benign_dir / f"news_{i:03d}.txt").write_text(gen_news(rng, i), encoding="utf-8")

    for i in range(README_COUNT):
        rng = random.Random(f"{MASTER_SEED}:readme:{i}")
        (benign_dir / f"readme_{i:02d}.md").write_text(gen_readme(rng, i), encoding="utf-8")

    for i in range(CODE_COUNT):
        rng = random.Random(f"{MASTER_SEED}:code:{i}")
        name, content = gen_code(rng, i)
        (benign_dir / f"code_{i:02d}_{name}").write_text(content, encoding="utf-8")

    ransom_n = len(list(ransom_dir.iterdir()))
    benign_n = len(list(benign_dir.iterdir()))
    print(f"corpus written to {root}: {ransom_n} ransom, {benign_n} benign")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "-o", "--output", default=str(Path(__file__).resolve().parents[1] / "data" / "corpus")
    )
    args = parser.parse_args()
    build(Path(args.output))


if __name__ == "__main__":
    main()
