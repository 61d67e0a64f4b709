/** Command line entry: cross-check <certs> <verdicts> [--json]
 *
 * Exit 0 when every recomputed verdict matches the published one,
 * 1 on any disagreement, 2 on usage or file problems.
 */

import { readFileSync } from "node:fs";

import { parseRecords } from "./certificates.js";
import { crossCheck } from "./crosscheck.js";
import { parseVerdicts } from "./verdicts.js";

function usage(): number {
  process.stderr.write(
    "usage: cross-check <certificates> <verdicts.json> [--json]\n");
  return 2;
}

export function main(argv: string[]): number {
  const args = argv.filter((a) => a !== "--json");
  const json = args.length !== argv.length;
  if (args.length !== 3 || args[0] !== "cross-check") return usage();
  let result;
  try {
    const certs = parseRecords(readFileSync(args[1], "utf8"));
    const verdicts = parseVerdicts(readFileSync(args[2], "utf8"));
    result = crossCheck(certs, verdicts);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
  if (json) {
    process.stdout.write(JSON.stringify(
      { checked: result.checked, disagreements: result.disagreements,
        verdicts: result.recomputed }, null, 1) + "\n");
  } else {
    for (const v of result.recomputed) {
      const word = v.passes ? "PASS" : "FAIL";
      process.stdout.write(
        `${word} order ${v.order} (${v.k},${v.j}) cliques `
        + `${v.clique0}/${v.clique1} ${v.seconds.toFixed(1)}s `
        + `${v.label}`.trimEnd() + "\n");
    }
    for (const d of result.disagreements) {
      process.stdout.write(
        `DISAGREE [${d.index}] ${d.label} ${d.field}: `
        + `recomputed ${d.ours}, published ${d.theirs}\n`);
    }
    process.stdout.write(
      `checked ${result.checked}, disagreements `
      + `${result.disagreements.length}\n`);
  }
  return result.disagreements.length === 0 ? 0 : 1;
}

process.exit(main(process.argv.slice(2)));
