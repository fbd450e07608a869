// Live preview of plain-text math entry: a display-only formatter that
// echoes what the student typed with superscripts, radical signs, and dots.
// It renders HTML for readability; the server remains the sole judge of
// meaning and correctness.

const entityMap: Record<string, string> = {
  '&': '&amp;',
  '<': '&lt;',
  '>': '&gt;',
  '"': '&quot;',
};

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"]/g, (ch) => entityMap[ch]);
}

export function previewHtml(input: string): string {
  let out = '';
  let i = 0;
  const text = input.trim();
  while (i < text.length) {
    if (text.startsWith('sqrt(', i) || text.startsWith('cbrt(', i)) {
      const cube = text[i] === 'c';
      const start = i + 5;
      let depth = 1;
      let j = start;
      while (j < text.length && depth > 0) {
        if (text[j] === '(') depth += 1;
        if (text[j] === ')') depth -= 1;
        j += 1;
      }
      const inner = text.slice(start, depth === 0 ? j - 1 : j);
      out += `${cube ? '<sup>3</sup>' : ''}&radic;<span class="radicand">${previewHtml(inner)}</span>`;
      i = j;
      continue;
    }
    const ch = text[i];
    if (ch === '^') {
      let j = i + 1;
      let exponent = '';
      if (text[j] === '(') {
        let depth = 1;
        j += 1;
        const start = j;
        while (j < text.length && depth > 0) {
          if (text[j] === '(') depth += 1;
          if (text[j] === ')') depth -= 1;
          j += 1;
        }
        exponent = text.slice(start, depth === 0 ? j - 1 : j);
      } else {
        if (text[j] === '-') j += 1;
        while (j < text.length && /[0-9a-zA-Z]/.test(text[j])) j += 1;
        exponent = text.slice(i + 1, j);
      }
      out += `<sup>${previewHtml(exponent)}</sup>`;
      i = j;
      continue;
    }
    if (ch === '*') {
      out += '&middot;';
      i += 1;
      continue;
    }
    out += escapeHtml(ch);
    i += 1;
  }
  return out;
}
