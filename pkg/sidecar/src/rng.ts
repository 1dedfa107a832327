/** Deterministic seeded randomness for weight generation.
 *
 * Everything is derived from strings, so the same model id always produces
 * the same weights on every platform: FNV-1a hashes seed an sfc32 stream,
 * and gaussians come from Box-Muller over that stream.
 */

function fnv1a(text: string, basis: number): number {
  let hash = basis >>> 0;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

/** Small fast counter-based PRNG with good statistical behavior. */
export function sfc32(a: number, b: number, c: number, d: number): () => number {
  return () => {
    a >>>= 0; b >>>= 0; c >>>= 0; d >>>= 0;
    const t = (a + b) | 0;
    a = b ^ (b >>> 9);
    b = (c + (c << 3)) | 0;
    c = (c << 21) | (c >>> 11);
    d = (d + 1) | 0;
    const out = (t + d) | 0;
    c = (c + out) | 0;
    return (out >>> 0) / 4294967296;
  };
}

export class SeededRng {
  private readonly next: () => number;
  private spare: number | null = null;

  constructor(seed: string) {
    const a = fnv1a(seed, 0x811c9dc5);
    const b = fnv1a(seed, 0x01234567);
    const c = fnv1a(seed, 0x89abcdef);
    const d = fnv1a(seed, 0xdeadbeef);
    this.next = sfc32(a, b, c, d);
    // burn a few values so nearby seeds decorrelate
    for (let i = 0; i < 12; i++) this.next();
  }

  uniform(): number {
    return this.next();
  }

  gaussian(): number {
    if (this.spare !== null) {
      const value = this.spare;
      this.spare = null;
      return value;
    }
    let u = 0;
    let v = 0;
    while (u === 0) u = this.next();
    while (v === 0) v = this.next();
    const radius = Math.sqrt(-2.0 * Math.log(u));
    this.spare = radius * Math.sin(2.0 * Math.PI * v);
    return radius * Math.cos(2.0 * Math.PI * v);
  }

  gaussianVector(length: number, scale: number): Float64Array {
    const out = new Float64Array(length);
    for (let i = 0; i < length; i++) out[i] = this.gaussian() * scale;
    return out;
  }
}
