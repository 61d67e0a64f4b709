/** Verdict JSON as produced by `ramseykit verify --json`. */

export interface Verdict {
  order: number;
  k: number;
  j: number;
  clique0: number;
  clique1: number;
  pass_as_given: boolean;
  pass_swapped: boolean;
  passes: boolean;
  method: string;
  seconds: number;
  label: string;
}

const NUMBER_FIELDS = ["order", "k", "j", "clique0", "clique1",
                       "seconds"] as const;
const BOOL_FIELDS = ["pass_as_given", "pass_swapped", "passes"] as const;

export function parseVerdicts(text: string): Verdict[] {
  const doc = JSON.parse(text);
  if (typeof doc !== "object" || doc === null
      || !Array.isArray(doc.verdicts)) {
    throw new Error("verdict document needs a verdicts array");
  }
  return doc.verdicts.map((raw: unknown, i: number) => {
    if (typeof raw !== "object" || raw === null) {
      throw new Error(`verdict ${i} is not an object`);
    }
    const v = raw as Record<string, unknown>;
    for (const field of NUMBER_FIELDS) {
      if (typeof v[field] !== "number") {
        throw new Error(`verdict ${i} misses numeric ${field}`);
      }
    }
    for (const field of BOOL_FIELDS) {
      if (typeof v[field] !== "boolean") {
        throw new Error(`verdict ${i} misses boolean ${field}`);
      }
    }
    return {
      order: v.order, k: v.k, j: v.j,
      clique0: v.clique0, clique1: v.clique1,
      pass_as_given: v.pass_as_given, pass_swapped: v.pass_swapped,
      passes: v.passes,
      method: typeof v.method === "string" ? v.method : "",
      seconds: v.seconds,
      label: typeof v.label === "string" ? v.label : "",
    } as Verdict;
  });
}
