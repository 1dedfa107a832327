/** A tiny deterministic transformer encoder.
 *
 * Weights are generated once, at construction, from the model id string, so
 * a given id always serves the same embedding space (and a different id a
 * different one). Inference is pure float64 arithmetic in a fixed order:
 * identical inputs produce bit-identical outputs.
 *
 * Sentence vectors are the mean over the final token vectors (mean pooling),
 * which /healthcheck reports so clients can log it.
 */

import { SeededRng } from "./rng.js";
import { tokenize } from "./tokenizer.js";

export const DIMENSION = 96;
const LAYERS = 2;
const HEADS = 4;
const HEAD_DIM = DIMENSION / HEADS;
const FFN_DIM = 192;
const MAX_POSITIONS = 512;
const LN_EPS = 1e-5;

interface LayerWeights {
  wq: Float64Array;
  wk: Float64Array;
  wv: Float64Array;
  wo: Float64Array;
  ln1Gain: Float64Array;
  ln1Bias: Float64Array;
  ln2Gain: Float64Array;
  ln2Bias: Float64Array;
  ffnW1: Float64Array; // DIMENSION x FFN_DIM
  ffnB1: Float64Array;
  ffnW2: Float64Array; // FFN_DIM x DIMENSION
  ffnB2: Float64Array;
}

export interface EmbeddingOutput {
  tokens: string[];
  tokenVectors: number[][];
  sentenceVector: number[];
}

function layerNorm(
  row: Float64Array, gain: Float64Array, bias: Float64Array,
): Float64Array {
  let mean = 0;
  for (let i = 0; i < row.length; i++) mean += row[i]!;
  mean /= row.length;
  let variance = 0;
  for (let i = 0; i < row.length; i++) {
    const centered = row[i]! - mean;
    variance += centered * centered;
  }
  variance /= row.length;
  const inv = 1.0 / Math.sqrt(variance + LN_EPS);
  const out = new Float64Array(row.length);
  for (let i = 0; i < row.length; i++) {
    out[i] = (row[i]! - mean) * inv * gain[i]! + bias[i]!;
  }
  return out;
}

function gelu(x: number): number {
  return 0.5 * x * (1.0 + Math.tanh(Math.sqrt(2.0 / Math.PI) * (x + 0.044715 * x * x * x)));
}

/** out[row] = matrix^T applied to vec where matrix is (inDim x outDim) row-major. */
function matVec(vec: Float64Array, matrix: Float64Array, inDim: number, outDim: number): Float64Array {
  const out = new Float64Array(outDim);
  for (let i = 0; i < inDim; i++) {
    const value = vec[i]!;
    if (value === 0) continue;
    const base = i * outDim;
    for (let j = 0; j < outDim; j++) out[j]! += value * matrix[base + j]!;
  }
  return out;
}

export class EmbeddingModel {
  readonly modelId: string;
  readonly dimension = DIMENSION;
  readonly pooling = "mean";

  private readonly layers: LayerWeights[] = [];
  private readonly finalGain: Float64Array;
  private readonly finalBias: Float64Array;
  private readonly positions: Float64Array[] = [];
  private readonly tokenCache = new Map<string, Float64Array>();

  constructor(modelId: string) {
    if (!modelId) throw new Error("model id must be a non-empty string");
    this.modelId = modelId;
    const attnScale = 1.0 / Math.sqrt(DIMENSION);
    for (let layer = 0; layer < LAYERS; layer++) {
      const rng = (name: string) => new SeededRng(`${modelId}|L${layer}|${name}`);
      this.layers.push({
        wq: rng("wq").gaussianVector(DIMENSION * DIMENSION, attnScale),
        wk: rng("wk").gaussianVector(DIMENSION * DIMENSION, attnScale),
        wv: rng("wv").gaussianVector(DIMENSION * DIMENSION, attnScale),
        wo: rng("wo").gaussianVector(DIMENSION * DIMENSION, attnScale),
        ln1Gain: shiftedOnes(rng("ln1g")),
        ln1Bias: rng("ln1b").gaussianVector(DIMENSION, 0.02),
        ln2Gain: shiftedOnes(rng("ln2g")),
        ln2Bias: rng("ln2b").gaussianVector(DIMENSION, 0.02),
        ffnW1: rng("ffw1").gaussianVector(DIMENSION * FFN_DIM, 1.0 / Math.sqrt(DIMENSION)),
        ffnB1: rng("ffb1").gaussianVector(FFN_DIM, 0.02),
        ffnW2: rng("ffw2").gaussianVector(FFN_DIM * DIMENSION, 1.0 / Math.sqrt(FFN_DIM)),
        ffnB2: rng("ffb2").gaussianVector(DIMENSION, 0.02),
      });
    }
    this.finalGain = shiftedOnes(new SeededRng(`${modelId}|final|gain`));
    this.finalBias = new SeededRng(`${modelId}|final|bias`).gaussianVector(DIMENSION, 0.02);
    for (let i = 0; i < MAX_POSITIONS; i++) {
      this.positions.push(new SeededRng(`${modelId}|pos|${i}`).gaussianVector(DIMENSION, 0.1));
    }
  }

  private tokenEmbedding(token: string): Float64Array {
    let vec = this.tokenCache.get(token);
    if (vec === undefined) {
      vec = new SeededRng(`${this.modelId}|tok|${token}`).gaussianVector(DIMENSION, 1.0);
      this.tokenCache.set(token, vec);
    }
    return vec;
  }

  embed(text: string): EmbeddingOutput {
    const tokens = tokenize(text).slice(0, MAX_POSITIONS);
    if (tokens.length === 0) {
      return { tokens: [], tokenVectors: [], sentenceVector: new Array(DIMENSION).fill(0) };
    }
    let hidden: Float64Array[] = tokens.map((token, i) => {
      const emb = this.tokenEmbedding(token);
      const pos = this.positions[i]!;
      const row = new Float64Array(DIMENSION);
      for (let j = 0; j < DIMENSION; j++) row[j] = emb[j]! + pos[j]!;
      return row;
    });

    for (const layer of this.layers) {
      const normed = hidden.map((row) => layerNorm(row, layer.ln1Gain, layer.ln1Bias));
      const attended = this.attention(normed, layer);
      hidden = hidden.map((row, t) => addRows(row, attended[t]!));
      const normed2 = hidden.map((row) => layerNorm(row, layer.ln2Gain, layer.ln2Bias));
      hidden = hidden.map((row, t) => addRows(row, this.feedForward(normed2[t]!, layer)));
    }
    const finalRows = hidden.map((row) => layerNorm(row, this.finalGain, this.finalBias));

    const sentence = new Array<number>(DIMENSION).fill(0);
    for (const row of finalRows) {
      for (let j = 0; j < DIMENSION; j++) sentence[j]! += row[j]!;
    }
    for (let j = 0; j < DIMENSION; j++) sentence[j]! /= finalRows.length;

    return {
      tokens,
      tokenVectors: finalRows.map((row) => Array.from(row)),
      sentenceVector: sentence,
    };
  }

  private attention(rows: Float64Array[], layer: LayerWeights): Float64Array[] {
    const n = rows.length;
    const q = rows.map((row) => matVec(row, layer.wq, DIMENSION, DIMENSION));
    const k = rows.map((row) => matVec(row, layer.wk, DIMENSION, DIMENSION));
    const v = rows.map((row) => matVec(row, layer.wv, DIMENSION, DIMENSION));
    const scale = 1.0 / Math.sqrt(HEAD_DIM);

    const mixed: Float64Array[] = rows.map(() => new Float64Array(DIMENSION));
    for (let head = 0; head < HEADS; head++) {
      const offset = head * HEAD_DIM;
      for (let t = 0; t < n; t++) {
        const scores = new Float64Array(n);
        let best = -Infinity;
        for (let s = 0; s < n; s++) {
          let dot = 0;
          for (let j = 0; j < HEAD_DIM; j++) dot += q[t]![offset + j]! * k[s]![offset + j]!;
          scores[s] = dot * scale;
          if (scores[s]! > best) best = scores[s]!;
        }
        let total = 0;
        for (let s = 0; s < n; s++) {
          scores[s] = Math.exp(scores[s]! - best);
          total += scores[s]!;
        }
        for (let s = 0; s < n; s++) {
          const weight = scores[s]! / total;
          if (weight === 0) continue;
          for (let j = 0; j < HEAD_DIM; j++) {
            mixed[t]![offset + j]! += weight * v[s]![offset + j]!;
          }
        }
      }
    }
    return mixed.map((row) => matVec(row, layer.wo, DIMENSION, DIMENSION));
  }

  private feedForward(row: Float64Array, layer: LayerWeights): Float64Array {
    const inner = matVec(row, layer.ffnW1, DIMENSION, FFN_DIM);
    for (let j = 0; j < FFN_DIM; j++) inner[j] = gelu(inner[j]! + layer.ffnB1[j]!);
    const out = matVec(inner, layer.ffnW2, FFN_DIM, DIMENSION);
    for (let j = 0; j < DIMENSION; j++) out[j]! += layer.ffnB2[j]!;
    return out;
  }
}

function addRows(a: Float64Array, b: Float64Array): Float64Array {
  const out = new Float64Array(a.length);
  for (let i = 0; i < a.length; i++) out[i] = a[i]! + b[i]!;
  return out;
}

function shiftedOnes(rng: SeededRng): Float64Array {
  const out = rng.gaussianVector(DIMENSION, 0.02);
  for (let i = 0; i < out.length; i++) out[i] = 1.0 + out[i]!;
  return out;
}
