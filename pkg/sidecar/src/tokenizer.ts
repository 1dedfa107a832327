/** Subword tokenizer: lowercased words and punctuation, with long words
 * split into 8-character pieces marked by a ## continuation prefix. */

const PIECE_LENGTH = 8;
const TOKEN_PATTERN = /[a-z0-9']+|[^\sa-z0-9']/g;

export function tokenize(text: string): string[] {
  const tokens: string[] = [];
  for (const match of text.toLowerCase().matchAll(TOKEN_PATTERN)) {
    const word = match[0];
    if (word.length <= PIECE_LENGTH) {
      tokens.push(word);
      continue;
    }
    tokens.push(word.slice(0, PIECE_LENGTH));
    for (let i = PIECE_LENGTH; i < word.length; i += PIECE_LENGTH) {
      tokens.push("##" + word.slice(i, i + PIECE_LENGTH));
    }
  }
  return tokens;
}
