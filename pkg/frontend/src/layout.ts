// Deterministic force-directed layout. No randomness: nodes start on a
// circle in name order, then springs pull neighbors together and a
// repulsive charge pushes everyone apart for a fixed number of steps, so
// the same graph always lands in the same picture.

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width?: number;
  height?: number;
  iterations?: number;
}

export function layoutGraph(
  names: string[],
  edges: [string, string][],
  options: LayoutOptions = {},
): Map<string, Point> {
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const steps = options.iterations ?? 250;
  const n = names.length;
  const pos = new Map<string, Point>();
  if (n === 0) return pos;

  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.36;
  names.forEach((name, i) => {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    pos.set(name, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  });
  if (n === 1) return pos;

  const index = new Map(names.map((name, i) => [name, i]));
  const xs = names.map((name) => pos.get(name)!.x);
  const ys = names.map((name) => pos.get(name)!.y);
  const springs: [number, number][] = [];
  const seen = new Set<string>();
  for (const [a, b] of edges) {
    const i = index.get(a);
    const j = index.get(b);
    if (i === undefined || j === undefined || i === j) continue;
    const key = i < j ? `${i},${j}` : `${j},${i}`;
    if (!seen.has(key)) {
      seen.add(key);
      springs.push(i < j ? [i, j] : [j, i]);
    }
  }

  const ideal = radius * (1.6 / Math.sqrt(n));
  const charge = ideal * ideal;
  for (let step = 0; step < steps; step++) {
    const cooling = 1 - step / steps;
    const fx = new Array<number>(n).fill(0);
    const fy = new Array<number>(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = xs[i]! - xs[j]!;
        let dy = ys[i]! - ys[j]!;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          // coincident nodes: nudge apart along a fixed axis
          dx = 1e-3 * (i - j);
          dy = 1e-3;
          d2 = dx * dx + dy * dy;
        }
        const push = charge / d2;
        fx[i]! += dx * push;
        fy[i]! += dy * push;
        fx[j]! -= dx * push;
        fy[j]! -= dy * push;
      }
    }
    for (const [i, j] of springs) {
      const dx = xs[j]! - xs[i]!;
      const dy = ys[j]! - ys[i]!;
      const dist = Math.sqrt(dx * dx + dy * dy) || 1e-3;
      const pull = (dist - ideal) / dist;
      fx[i]! += dx * pull;
      fy[i]! += dy * pull;
      fx[j]! -= dx * pull;
      fy[j]! -= dy * pull;
    }
    const cap = 12 * cooling + 0.5;
    for (let i = 0; i < n; i++) {
      const mag = Math.sqrt(fx[i]! * fx[i]! + fy[i]! * fy[i]!) || 1;
      const scale = Math.min(cap, mag) / mag;
      xs[i]! += fx[i]! * scale * 0.08;
      ys[i]! += fy[i]! * scale * 0.08;
    }
  }

  // normalize back into the frame with a margin
  const margin = 36;
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1e-6);
  const spanY = Math.max(maxY - minY, 1e-6);
  names.forEach((name, i) => {
    pos.set(name, {
      x: margin + ((xs[i]! - minX) / spanX) * (width - 2 * margin),
      y: margin + ((ys[i]! - minY) / spanY) * (height - 2 * margin),
    });
  });
  return pos;
}
