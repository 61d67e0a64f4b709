/** Exact clique numbers for one color class of a distance coloring.
 *
 * The graph on vertices 0..N-1 joins a and b when distance |a-b| has
 * the requested color.  Adjacency lives in packed Uint32Array rows and
 * the search is a branch and bound with a greedy coloring bound: the
 * candidate set is partitioned into independent classes, and a branch
 * dies when the class count cannot beat the incumbent.
 *
 * Palindromic masks describe circulant graphs, which are vertex
 * transitive, so any maximum clique can be rotated onto vertex 0; the
 * search then runs on the induced neighborhood of 0, half the size.
 */

import type { CertRecord } from "./certificates.js";

function buildAdjacency(colors: Uint8Array, order: number,
                        color: number): Uint32Array {
  const words = (order + 31) >>> 5;
  const adj = new Uint32Array(order * words);
  for (let a = 0; a < order; a++) {
    for (let b = a + 1; b < order; b++) {
      if (colors[b - a - 1] === color) {
        adj[a * words + (b >>> 5)] |= 1 << (b & 31);
        adj[b * words + (a >>> 5)] |= 1 << (a & 31);
      }
    }
  }
  return adj;
}

function greedySeed(adj: Uint32Array, n: number, words: number): number {
  // one greedy growth per start vertex, to open with a real incumbent
  const cand = new Uint32Array(words);
  let best = 0;
  for (let start = 0; start < n; start++) {
    cand.set(adj.subarray(start * words, (start + 1) * words));
    let size = 1;
    let v = lowestBit(cand, words);
    while (v >= 0) {
      size++;
      for (let w = 0; w < words; w++) cand[w] &= adj[v * words + w];
      v = lowestBit(cand, words);
    }
    if (size > best) best = size;
  }
  return best;
}

function lowestBit(set: Uint32Array, words: number): number {
  for (let w = 0; w < words; w++) {
    if (set[w] !== 0) {
      return (w << 5) + (31 - Math.clz32(set[w] & -set[w]));
    }
  }
  return -1;
}

function popcount32(x: number): number {
  x -= (x >>> 1) & 0x55555555;
  x = (x & 0x33333333) + ((x >>> 2) & 0x33333333);
  x = (x + (x >>> 4)) & 0x0f0f0f0f;
  return (x * 0x01010101) >>> 24;
}

/** Maximum clique order of an arbitrary packed adjacency matrix. */
function maxClique(adj: Uint32Array, n: number): number {
  if (n === 0) return 0;
  const words = (n + 31) >>> 5;
  let best = greedySeed(adj, n, words);

  // scratch buffers indexed by recursion depth; a clique has at most
  // n vertices so depth stays below n + 1
  const stack = new Uint32Array((n + 3) * words);
  const classes = new Uint32Array(words);
  const verts = new Int32Array((n + 1) * n);
  const bound = new Int32Array((n + 1) * n);
  const un = (n + 2) * words;

  function expand(size: number, depth: number, count: number): void {
    const P = depth * words;
    if (count === 0) {
      if (size > best) best = size;
      return;
    }
    if (size + count <= best) return;
    // greedy independent-set classes over P, recorded in branch order
    const vbase = depth * n;
    let listed = 0;
    stack.copyWithin(un, P, P + words);
    let cls = 0;
    while (listed < count) {
      let any = false;
      classes.set(stack.subarray(un, un + words));
      cls++;
      for (let w = 0; w < words; w++) {
        let m = classes[w];
        while (m !== 0) {
          const v = (w << 5) + (31 - Math.clz32(m & -m));
          m &= m - 1;
          any = true;
          stack[un + w] &= ~(1 << (v & 31));
          for (let x = 0; x < words; x++) classes[x] &= ~adj[v * words + x];
          m &= classes[w];
          verts[vbase + listed] = v;
          bound[vbase + listed] = cls;
          listed++;
        }
      }
      if (!any) break;
    }
    // branch from the last class down; earlier vertices keep lower bounds
    for (let i = listed - 1; i >= 0; i--) {
      if (size + bound[vbase + i] <= best) return;
      const v = verts[vbase + i];
      const child = (depth + 1) * words;
      let childCount = 0;
      for (let w = 0; w < words; w++) {
        const masked = stack[P + w] & adj[v * words + w];
        stack[child + w] = masked;
        childCount += popcount32(masked);
      }
      expand(size + 1, depth + 1, childCount);
      stack[P + (v >>> 5)] &= ~(1 << (v & 31));
    }
  }

  for (let w = 0; w < words; w++) stack[w] = 0xffffffff;
  const tail = n & 31;
  if (tail !== 0) stack[words - 1] = ((1 << tail) - 1) >>> 0;
  expand(0, 0, n);
  return best;
}

function isPalindromic(colors: Uint8Array): boolean {
  for (let i = 0; i < colors.length; i++) {
    if (colors[i] !== colors[colors.length - 1 - i]) return false;
  }
  return true;
}

/** Induced subgraph on the neighbors of vertex 0, relabeled 0..m-1. */
function neighborhoodOfZero(adj: Uint32Array, order: number,
                            words: number): [Uint32Array, number] {
  const nbrs: number[] = [];
  for (let v = 1; v < order; v++) {
    if (adj[v >>> 5] & (1 << (v & 31))) nbrs.push(v);
  }
  const m = nbrs.length;
  const subWords = (m + 31) >>> 5;
  const sub = new Uint32Array(m * subWords);
  for (let a = 0; a < m; a++) {
    const row = nbrs[a] * words;
    for (let b = 0; b < m; b++) {
      if (adj[row + (nbrs[b] >>> 5)] & (1 << (nbrs[b] & 31))) {
        sub[a * subWords + (b >>> 5)] |= 1 << (b & 31);
      }
    }
  }
  return [sub, m];
}

export function cliqueNumber(colors: Uint8Array, order: number,
                             color: 0 | 1): number {
  const words = (order + 31) >>> 5;
  const adj = buildAdjacency(colors, order, color);
  if (isPalindromic(colors)) {
    const [sub, m] = neighborhoodOfZero(adj, order, words);
    return 1 + maxClique(sub, m);
  }
  return maxClique(adj, order);
}

export interface CliquePair {
  clique0: number;
  clique1: number;
}

export function cliqueNumbers(rec: CertRecord): CliquePair {
  return {
    clique0: cliqueNumber(rec.colors, rec.order, 0),
    clique1: cliqueNumber(rec.colors, rec.order, 1),
  };
}
