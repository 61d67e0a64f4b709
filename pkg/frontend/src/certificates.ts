/** Parser for the certificate text format.
 *
 * One record per line.  `circulant N : d1 d2 ...` lists the distances
 * colored 1 (each d also colors N-d); `distance N : hex` gives the raw
 * color mask with nibble i holding distance bits 4i+1..4i+4.  A trailing
 * `# k j [label]` attaches the claimed forbidden clique orders.
 */

export interface CertRecord {
  kind: "circulant" | "distance";
  order: number;
  /** colors[d-1] is the color of distance d, for d in 1..order-1. */
  colors: Uint8Array;
  k?: number;
  j?: number;
  label: string;
}

export class ParseError extends Error {
  constructor(message: string, lineNo?: number) {
    super(lineNo === undefined ? message : `line ${lineNo}: ${message}`);
  }
}

function parseClaim(rec: CertRecord, comment: string, lineNo: number): void {
  const parts = comment.trim().split(/\s+/).filter((p) => p.length > 0);
  if (parts.length === 0) return;
  if (parts.length < 2) throw new ParseError("claim needs k and j", lineNo);
  const k = Number(parts[0]);
  const j = Number(parts[1]);
  if (!Number.isInteger(k) || !Number.isInteger(j) || k < 2 || j < 2) {
    throw new ParseError(`bad claim ${comment.trim()}`, lineNo);
  }
  rec.k = k;
  rec.j = j;
  if (parts.length > 2) rec.label = parts.slice(2).join(" ");
}

function parseHead(head: string, lineNo: number): [string, number, string[]] {
  const m = head.match(/^(circulant|distance)\s+(\d+)\s*:\s*(.*)$/);
  if (!m) throw new ParseError(`unrecognized record: ${head}`, lineNo);
  const order = Number(m[2]);
  if (order < 2) throw new ParseError(`order ${order} too small`, lineNo);
  return [m[1], order, m[3].trim().split(/\s+/).filter((p) => p.length > 0)];
}

export function parseRecord(line: string, lineNo = 0): CertRecord {
  const hash = line.indexOf("#");
  const head = (hash < 0 ? line : line.slice(0, hash)).trim();
  const [kind, order, body] = parseHead(head, lineNo);
  const colors = new Uint8Array(order - 1);
  if (kind === "circulant") {
    for (const part of body) {
      const d = Number(part);
      if (!Number.isInteger(d) || d < 1 || d >= order) {
        throw new ParseError(`distance ${part} outside 1..${order - 1}`,
                             lineNo);
      }
      colors[d - 1] = 1;
      colors[order - d - 1] = 1;
    }
  } else {
    const hex = body.join("");
    if (!/^[0-9a-fA-F]+$/.test(hex) || hex.length > (order + 2 >> 2)) {
      throw new ParseError(`bad mask ${hex} for order ${order}`, lineNo);
    }
    for (let i = 0; i < hex.length; i++) {
      const nibble = parseInt(hex[i], 16);
      for (let b = 0; b < 4; b++) {
        const pos = 4 * i + b;
        if (nibble & (1 << b)) {
          if (pos >= order - 1) {
            throw new ParseError(`mask wider than order ${order}`, lineNo);
          }
          colors[pos] = 1;
        }
      }
    }
  }
  const rec: CertRecord = { kind: kind as CertRecord["kind"], order, colors,
                            label: "" };
  if (hash >= 0) parseClaim(rec, line.slice(hash + 1), lineNo);
  return rec;
}

export function parseRecords(text: string): CertRecord[] {
  const out: CertRecord[] = [];
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const stripped = lines[i].trim();
    if (stripped.length === 0 || stripped.startsWith("#")) continue;
    out.push(parseRecord(stripped, i + 1));
  }
  return out;
}
