#!/usr/bin/env node
/*
  probes-loader: front end for the kernel event probes.

  Two modes:

    --attach
        Load and attach the compiled kernel programs (bpf/*.bpf.o) and
        stream their ring-buffer records to stdout. Needs a Linux host,
        tracing privileges, and objects built per bpf/ (see README).
        Every prerequisite is checked up front and a missing one is
        reported exactly; nothing is simulated.

    --from-trace <scenario dir | events.trace>
        Feed a recorded scenario through the same threshold gate the
        kernel applies and emit the surviving records to stdout in wire
        format. Record paths are remapped into the scenario's fs/ tree so
        a downstream consumer scans the recorded file contents:

            probes-loader --from-trace ./npd --threshold 10 \
              | ransomguard run --records - -m model.rgmodel --threshold 1

        The consumer runs with threshold 1 because the gate has already
        suppressed pre-threshold creations. With --raw-emit nothing is
        suppressed and the consumer keeps its own threshold.
*/

import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { ThresholdGate } from "./gating.js";
import { readTrace } from "./trace.js";
import { PATH_MAX_BYTES, RecordKind, encodeRecord } from "./wire.js";

interface LoaderOptions {
  attach: boolean;
  fromTrace?: string;
  fsRoot?: string;
  threshold: number;
  rawEmit: boolean;
}

const USAGE = `usage: probes-loader (--attach | --from-trace PATH) [options]

options:
  --threshold N   creations before a process's files are reported (default 10)
  --raw-emit      disable in-kernel gating; forward every record
  --fs-root DIR   override the content root used to remap trace paths
  --help          show this message
`;

function parseArgs(argv: string[]): LoaderOptions {
  const opts: LoaderOptions = { attach: false, threshold: 10, rawEmit: false };
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = (): string => {
      i += 1;
      if (i >= argv.length) {
        throw new Error(`${arg} requires a value`);
      }
      return argv[i];
    };
    switch (arg) {
      case "--attach":
        opts.attach = true;
        break;
      case "--from-trace":
        opts.fromTrace = next();
        break;
      case "--fs-root":
        opts.fsRoot = next();
        break;
      case "--threshold": {
        const raw = next();
        opts.threshold = Number(raw);
        if (!Number.isInteger(opts.threshold) || opts.threshold < 1) {
          throw new Error(`--threshold expects an integer >= 1, got '${raw}'`);
        }
        break;
      }
      case "--raw-emit":
        opts.rawEmit = true;
        break;
      case "--help":
        process.stdout.write(USAGE);
        process.exit(0);
        break;
      default:
        throw new Error(`unknown argument '${arg}'`);
    }
  }
  if (opts.attach === Boolean(opts.fromTrace)) {
    throw new Error("exactly one of --attach or --from-trace is required");
  }
  return opts;
}

const KERNEL_OBJECTS = ["exec_probe.bpf.o", "openat_probe.bpf.o"];

function runAttach(): never {
  // Fail on the first unmet prerequisite with the precise reason; the
  // kernel path never degrades into simulation silently.
  if (process.platform !== "linux") {
    fail(`--attach needs a Linux host (running on ${process.platform})`);
  }
  if (typeof process.getuid === "function" && process.getuid() !== 0) {
    fail("--attach needs tracing privileges (CAP_BPF/CAP_PERFMON or root)");
  }
  const bpfDir = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "bpf");
  const missing = KERNEL_OBJECTS.filter((name) => !fs.existsSync(path.join(bpfDir, name)));
  if (missing.length > 0) {
    fail(
      `kernel objects not built: ${missing.join(", ")} missing from ${bpfDir}; ` +
        "build them with the clang/bpftool recipe in bpf/ (needs kernel >= 5.8 headers)",
    );
  }
  fail(
    "ring-buffer consumption requires the libbpf runtime, which this build " +
      "does not bundle; load the objects with a libbpf front end or use --from-trace",
  );
}

function fail(message: string): never {
  process.stderr.write(`probes-loader: error: ${message}\n`);
  process.exit(2);
}

/** Map an absolute trace path into the scenario's content root. */
function remap(fsRoot: string, tracePath: string): string {
  const mapped = path.join(fsRoot, tracePath.replace(/^\/+/, ""));
  if (Buffer.byteLength(mapped, "utf8") > PATH_MAX_BYTES) {
    fail(`remapped path exceeds ${PATH_MAX_BYTES} bytes: ${mapped}`);
  }
  return mapped;
}

function runFromTrace(opts: LoaderOptions): void {
  const source = path.resolve(opts.fromTrace!);
  let traceFile = source;
  let fsRoot = path.join(path.dirname(source), "fs");
  if (fs.existsSync(source) && fs.statSync(source).isDirectory()) {
    traceFile = path.join(source, "events.trace");
    fsRoot = path.join(source, "fs");
  }
  if (opts.fsRoot) {
    fsRoot = path.resolve(opts.fsRoot);
  }
  if (!fs.existsSync(traceFile)) {
    fail(`trace not found: ${traceFile}`);
  }

  const records = readTrace(fs.readFileSync(traceFile, "utf8"));
  const gate = new ThresholdGate({ threshold: opts.threshold, rawEmit: opts.rawEmit });
  let emitted = 0;
  for (const record of records) {
    const forwarded = gate.observe(record);
    if (forwarded === null) {
      continue;
    }
    if (forwarded.kind !== RecordKind.Exit) {
      forwarded.path = remap(fsRoot, forwarded.path);
    }
    process.stdout.write(encodeRecord(forwarded));
    emitted += 1;
  }
  process.stderr.write(
    `probes-loader: ${records.length} events in, ${emitted} records out ` +
      `(threshold ${opts.threshold}${opts.rawEmit ? ", raw" : ""})\n`,
  );
}

function main(): void {
  let opts: LoaderOptions;
  try {
    opts = parseArgs(process.argv.slice(2));
  } catch (err) {
    process.stderr.write(`probes-loader: error: ${(err as Error).message}\n${USAGE}`);
    process.exit(2);
  }
  if (opts.attach) {
    runAttach();
  }
  runFromTrace(opts);
}

main();
