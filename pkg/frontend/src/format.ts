export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** Six decimal places, matching the server's reports. */
export function score(value: number): string {
  return value.toFixed(6);
}

export function severity(value: number): string {
  return value.toFixed(2);
}

export function flagAnchor(candidateId: string, index: number): string {
  return `rationale-${candidateId}-${index}`;
}
