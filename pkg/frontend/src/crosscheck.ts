/** Field-by-field comparison of recomputed verdicts against published ones.
 *
 * Certificates and verdicts are matched positionally and by label when
 * both carry one.  Clique numbers are recomputed from scratch here, so
 * agreement means two unrelated implementations concur on every order,
 * claim, clique number and pass flag.
 */

import type { CertRecord } from "./certificates.js";
import { cliqueNumbers } from "./clique.js";
import type { Verdict } from "./verdicts.js";

export interface Disagreement {
  index: number;
  label: string;
  field: string;
  ours: number | boolean | string;
  theirs: number | boolean | string;
}

export interface CrossCheckResult {
  checked: number;
  recomputed: Verdict[];
  disagreements: Disagreement[];
}

export function recompute(rec: CertRecord): Verdict {
  if (rec.k === undefined || rec.j === undefined) {
    throw new Error(`record ${rec.label || rec.order} carries no claim`);
  }
  const t0 = performance.now();
  const { clique0, clique1 } = cliqueNumbers(rec);
  const passGiven = clique0 < rec.k && clique1 < rec.j;
  const passSwapped = clique1 < rec.k && clique0 < rec.j;
  return {
    order: rec.order, k: rec.k, j: rec.j, clique0, clique1,
    pass_as_given: passGiven, pass_swapped: passSwapped,
    passes: passGiven || passSwapped,
    method: "uint32-bnb",
    seconds: (performance.now() - t0) / 1000,
    label: rec.label,
  };
}

const COMPARED = ["order", "k", "j", "clique0", "clique1",
                  "pass_as_given", "pass_swapped", "passes"] as const;

export function crossCheck(certs: CertRecord[],
                           verdicts: Verdict[]): CrossCheckResult {
  const out: CrossCheckResult = { checked: 0, recomputed: [],
                                  disagreements: [] };
  if (certs.length !== verdicts.length) {
    out.disagreements.push({
      index: -1, label: "", field: "count",
      ours: certs.length, theirs: verdicts.length,
    });
  }
  const n = Math.min(certs.length, verdicts.length);
  for (let i = 0; i < n; i++) {
    const theirs = verdicts[i];
    if (certs[i].label && theirs.label && certs[i].label !== theirs.label) {
      out.disagreements.push({
        index: i, label: certs[i].label, field: "label",
        ours: certs[i].label, theirs: theirs.label,
      });
      continue;
    }
    const ours = recompute(certs[i]);
    out.recomputed.push(ours);
    out.checked++;
    for (const field of COMPARED) {
      if (ours[field] !== theirs[field]) {
        out.disagreements.push({
          index: i, label: ours.label, field,
          ours: ours[field], theirs: theirs[field],
        });
      }
    }
  }
  return out;
}
