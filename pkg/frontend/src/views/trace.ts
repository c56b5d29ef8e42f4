import type { QuantileBands, ReportBundle } from '../types.js'

export class UnknownFunction extends Error {
    constructor(fid: string) {
        super(`function "${fid}" is not in this bundle`)
        this.name = 'UnknownFunction'
    }
}

const SVG_NS = 'http://www.w3.org/2000/svg'
const WIDTH = 640
const HEIGHT = 320
const PAD = 12

// red = method A favored, green = method B favored, everywhere
export const A_COLOR = '#c23b22'
export const B_COLOR = '#2e8b57'

type Scale = { x: (i: number) => number; y: (v: number) => number }

function makeScale(allBands: QuantileBands[], n: number): Scale {
    let vmin = Infinity
    let vmax = -Infinity
    for (const bands of allBands) {
        for (const v of [...bands.q25, ...bands.q75, ...bands.median]) {
            if (v < vmin) vmin = v
            if (v > vmax) vmax = v
        }
    }
    const span = vmax - vmin || 1
    const denom = Math.max(n - 1, 1)
    return {
        x: i => PAD + (i / denom) * (WIDTH - 2 * PAD),
        y: v => HEIGHT - PAD - ((v - vmin) / span) * (HEIGHT - 2 * PAD),
    }
}

function polylinePoints(values: number[], scale: Scale): string {
    return values.map((v, i) => `${scale.x(i)},${scale.y(v)}`).join(' ')
}

function bandPath(bands: QuantileBands, scale: Scale): string {
    const upper = bands.q75.map((v, i) => `${scale.x(i)},${scale.y(v)}`)
    const lower = bands.q25.map((v, i) => `${scale.x(i)},${scale.y(v)}`).reverse()
    return `M ${upper.join(' L ')} L ${lower.join(' L ')} Z`
}

function seriesGroup(
    doc: Document, method: string, side: 'a' | 'b', bands: QuantileBands, scale: Scale,
): SVGGElement {
    const color = side === 'a' ? A_COLOR : B_COLOR
    const g = doc.createElementNS(SVG_NS, 'g')
    g.setAttribute('class', `series series-${side}`)
    g.dataset.method = method
    g.dataset.median = JSON.stringify(bands.median)
    g.dataset.q25 = JSON.stringify(bands.q25)
    g.dataset.q75 = JSON.stringify(bands.q75)

    const band = doc.createElementNS(SVG_NS, 'path')
    band.setAttribute('class', 'iqr-band')
    band.setAttribute('d', bandPath(bands, scale))
    band.setAttribute('fill', color)
    band.setAttribute('fill-opacity', '0.22')
    band.setAttribute('stroke', 'none')
    g.appendChild(band)

    const median = doc.createElementNS(SVG_NS, 'polyline')
    median.setAttribute('class', 'median-line')
    median.setAttribute('points', polylinePoints(bands.median, scale))
    median.setAttribute('fill', 'none')
    median.setAttribute('stroke', color)
    median.setAttribute('stroke-width', '2')
    g.appendChild(median)
    return g
}

function summaryTable(doc: Document, bundle: ReportBundle, fid: string): HTMLTableElement {
    const entry = bundle.per_function[fid]!
    const table = doc.createElement('table')
    table.className = 'summary-table'
    const head = table.createTHead().insertRow()
    for (const title of ['metric', `mean ${bundle.pair.label_a}`, `mean ${bundle.pair.label_b}`,
                         'U', 'p-value', 'direction', 'significant']) {
        const th = doc.createElement('th')
        th.textContent = title
        head.appendChild(th)
    }
    const body = table.createTBody()
    for (const metric of bundle.metrics) {
        const outcome = entry.outcomes[metric]!
        const row = body.insertRow()
        row.dataset.metric = metric
        if (outcome.significant) row.classList.add('significant')
        // every numeric cell is String(value) of a bundle number, verbatim
        const cells = [metric, String(outcome.mean_a), String(outcome.mean_b),
                       String(outcome.u_statistic), String(outcome.p_value),
                       outcome.direction, outcome.significant ? 'yes' : 'no']
        for (const text of cells) {
            row.insertCell().textContent = text
        }
    }
    return table
}

// Median line plus shaded IQR band per method, with the per-metric
// comparison table alongside. Self-comparisons render the same bands twice.
export function renderTraceView(bundle: ReportBundle, fid: string): HTMLElement {
    const entry = bundle.per_function[fid]
    if (!entry) throw new UnknownFunction(fid)
    const doc = document

    const root = doc.createElement('section')
    root.className = 'trace-view'
    root.dataset.function = fid

    const heading = doc.createElement('h2')
    heading.textContent = fid
    root.appendChild(heading)

    const verdict = doc.createElement('p')
    verdict.className = 'verdict'
    verdict.textContent = `verdict: ${entry.verdict}`
    root.appendChild(verdict)

    const sides: Array<['a' | 'b', string, string]> = [
        ['a', bundle.pair.method_a, bundle.pair.label_a],
        ['b', bundle.pair.method_b, bundle.pair.label_b],
    ]
    const bandsPerSide = sides.map(([, method]) => entry.traces[method])
    if (bandsPerSide.some(b => b === undefined)) {
        throw new UnknownFunction(fid)
    }
    const n = bandsPerSide[0]!.median.length
    const scale = makeScale(bandsPerSide as QuantileBands[], n)

    const svg = doc.createElementNS(SVG_NS, 'svg')
    svg.setAttribute('viewBox', `0 0 ${WIDTH} ${HEIGHT}`)
    svg.setAttribute('class', 'trace-plot')
    for (const [side, method] of sides) {
        svg.appendChild(seriesGroup(doc, method, side, entry.traces[method]!, scale))
    }
    root.appendChild(svg)

    const legend = doc.createElement('p')
    legend.className = 'legend'
    legend.textContent =
        `${bundle.pair.label_a} (red) vs ${bundle.pair.label_b} (green), ` +
        `best seen value over ${String(bundle.budget)} evaluations`
    root.appendChild(legend)

    root.appendChild(summaryTable(doc, bundle, fid))
    return root
}
