import type { HistogramSide, ReportBundle, ViewState } from './types.js'

export function defaultState(bundle: ReportBundle): ViewState {
    return {
        selected_metric: bundle.metrics[0] ?? 'best_found',
        selected_bin: null,
        selected_function: null,
    }
}

// #metric=auc&bin=a:0&fn=neg_sphere_2d
export function encodeState(state: ViewState): string {
    const parts = [`metric=${encodeURIComponent(state.selected_metric)}`]
    if (state.selected_bin) {
        parts.push(`bin=${state.selected_bin.side}:${state.selected_bin.index}`)
    }
    if (state.selected_function) {
        parts.push(`fn=${encodeURIComponent(state.selected_function)}`)
    }
    return '#' + parts.join('&')
}

export function decodeState(hash: string, bundle: ReportBundle): ViewState {
    const state = defaultState(bundle)
    const fields = new Map<string, string>()
    for (const part of hash.replace(/^#/, '').split('&')) {
        const eq = part.indexOf('=')
        if (eq > 0) fields.set(part.slice(0, eq), decodeURIComponent(part.slice(eq + 1)))
    }
    const metric = fields.get('metric')
    if (metric && bundle.metrics.includes(metric)) {
        state.selected_metric = metric
    }
    const bin = fields.get('bin')
    if (bin) {
        const m = /^([ab]):(\d+)$/.exec(bin)
        if (m) {
            const side = m[1] as HistogramSide
            const index = Number(m[2])
            const hist = bundle.histograms[state.selected_metric]
            if (hist && index < hist.edges.length - 1) {
                state.selected_bin = { side, index }
            }
        }
    }
    const fn = fields.get('fn')
    if (fn && fn in bundle.per_function) {
        state.selected_function = fn
    }
    return sanitizeState(state, bundle)
}

// Invariant: a function selected under a bin must belong to that bin's id
// list; otherwise the deep link is stale and the function wins over the bin.
export function sanitizeState(state: ViewState, bundle: ReportBundle): ViewState {
    if (state.selected_bin && state.selected_function) {
        const ids = binMembers(bundle, state.selected_metric, state.selected_bin)
        if (!ids.includes(state.selected_function)) {
            return { ...state, selected_bin: null }
        }
    }
    return state
}

export function binMembers(
    bundle: ReportBundle,
    metric: string,
    bin: { side: HistogramSide; index: number },
): string[] {
    const hist = bundle.histograms[metric]
    if (!hist) return []
    const bins = bin.side === 'a' ? hist.a_bins : hist.b_bins
    return bins[bin.index] ?? []
}
