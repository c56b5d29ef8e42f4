import type { HistogramSide, ReportBundle } from '../types.js'
import { binMembers } from '../state.js'

export type HistogramCallbacks = {
    onBinClick: (side: HistogramSide, index: number) => void
    onFunctionClick: (fid: string) => void
}

function binLabel(edges: number[], index: number): string {
    const close = index === edges.length - 2 ? ']' : ')'
    return `[${String(edges[index])}, ${String(edges[index + 1])}${close}`
}

function sideChart(
    doc: Document,
    bundle: ReportBundle,
    metric: string,
    side: HistogramSide,
    maxCount: number,
    selected: { side: HistogramSide; index: number } | null,
    callbacks: HistogramCallbacks,
): HTMLElement {
    const hist = bundle.histograms[metric]!
    const bins = side === 'a' ? hist.a_bins : hist.b_bins
    const label = side === 'a' ? bundle.pair.label_a : bundle.pair.label_b

    const wrap = doc.createElement('div')
    wrap.className = `histogram-side histogram-${side}`
    const title = doc.createElement('h3')
    title.textContent = `significant toward ${label}`
    wrap.appendChild(title)

    const row = doc.createElement('div')
    row.className = 'bin-row'
    bins.forEach((ids, index) => {
        const column = doc.createElement('button')
        column.type = 'button'
        column.className = `bin-column bin-${side}`
        column.dataset.side = side
        column.dataset.bin = String(index)
        column.title = ids.join(', ')
        if (selected && selected.side === side && selected.index === index) {
            column.classList.add('selected')
        }
        const bar = doc.createElement('div')
        bar.className = 'bar'
        bar.style.height = `${maxCount > 0 ? (100 * ids.length) / maxCount : 0}%`
        column.appendChild(bar)
        const tick = doc.createElement('span')
        tick.className = 'bin-label'
        tick.textContent = binLabel(hist.edges, index)
        column.appendChild(tick)
        column.addEventListener('click', () => callbacks.onBinClick(side, index))
        row.appendChild(column)
    })
    wrap.appendChild(row)
    return wrap
}

// Two color-separated p-value histograms (A-favored red, B-favored green).
// Clicking a bin lists its function ids; clicking an id drills into the
// trace view. Bar heights are geometry; the only numeric text is bin edges.
export function renderHistogramView(
    bundle: ReportBundle,
    metric: string,
    selected: { side: HistogramSide; index: number } | null,
    callbacks: HistogramCallbacks,
): HTMLElement {
    const doc = document
    const root = doc.createElement('section')
    root.className = 'histogram-view'
    root.dataset.metric = metric

    const heading = doc.createElement('h2')
    heading.textContent = `p-value histogram: ${metric}`
    root.appendChild(heading)

    const hist = bundle.histograms[metric]!
    const maxCount = Math.max(1, ...hist.a_bins.map(b => b.length), ...hist.b_bins.map(b => b.length))
    const charts = doc.createElement('div')
    charts.className = 'histogram-charts'
    charts.appendChild(sideChart(doc, bundle, metric, 'a', maxCount, selected, callbacks))
    charts.appendChild(sideChart(doc, bundle, metric, 'b', maxCount, selected, callbacks))
    root.appendChild(charts)

    if (selected) {
        const ids = binMembers(bundle, metric, selected)
        const panel = doc.createElement('div')
        panel.className = 'bin-functions'
        const caption = doc.createElement('p')
        const sideLabel = selected.side === 'a' ? bundle.pair.label_a : bundle.pair.label_b
        caption.textContent =
            `functions in ${binLabel(hist.edges, selected.index)} toward ${sideLabel}:`
        panel.appendChild(caption)
        const list = doc.createElement('ul')
        list.className = 'function-list'
        for (const fid of ids) {
            const item = doc.createElement('li')
            const link = doc.createElement('a')
            link.href = '#'
            link.dataset.function = fid
            link.textContent = fid
            link.addEventListener('click', event => {
                event.preventDefault()
                callbacks.onFunctionClick(fid)
            })
            item.appendChild(link)
            list.appendChild(item)
        }
        panel.appendChild(list)
        root.appendChild(panel)
    }
    return root
}
